//! Finite fields `F_q`, `q = p^d`, with `d <= 8`.

use super::poly::PolyRing;
use super::rational::is_prime;
use super::ring::{Field, Ring};
use crate::{Error, Result};
use rand::{Rng, RngCore};
use std::sync::Arc;

pub const MAX_DEGREE: usize = 8;

/// Representative polynomial of degree `< d` over `F_p`, low coefficient first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteFieldElement(pub [u32; MAX_DEGREE]);

/// `F_p[z]/(m(z))` for an irreducible monic `m` of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    d: usize,
    modulus: Arc<Vec<u64>>,
}

impl Fq {
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("{p} is not a supported prime")));
        }
        Ok(Fq { p, d: 1, modulus: Arc::new(vec![0, 1]) })
    }

    /// Extension defined by `modulus` (monic, low coefficient first).
    pub fn new(p: u64, modulus: &[u64]) -> Result<Fq> {
        let base = Fq::prime(p)?;
        let d = modulus.len().saturating_sub(1);
        if d == 0 || d > MAX_DEGREE || modulus[d] % p != 1 {
            return Err(Error::InvalidInput("modulus must be monic of degree 1..=8".into()));
        }
        let pr = PolyRing::new(base.clone());
        let m = pr.from_coeffs(modulus.iter().map(|&c| base.from_u64(c)).collect());
        if !super::factor::is_irreducible_ff(&base, &m) {
            return Err(Error::InvalidInput("modulus is not irreducible".into()));
        }
        Ok(Fq { p, d, modulus: Arc::new(modulus.iter().map(|c| c % p).collect()) })
    }

    /// The extension of degree `d` defined by the lexicographically first
    /// irreducible monic polynomial.
    pub fn with_degree(p: u64, d: usize) -> Result<Fq> {
        if d == 1 {
            return Fq::prime(p);
        }
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::InvalidInput(format!("extension degree {d} outside 1..=8")));
        }
        let base = Fq::prime(p)?;
        let pr = PolyRing::new(base.clone());
        let total = p.checked_pow(d as u32).ok_or_else(|| Error::InvalidInput("field too large".into()))?;
        for code in 0..total {
            let mut c = Vec::with_capacity(d + 1);
            let mut r = code;
            for _ in 0..d {
                c.push(r % p);
                r /= p;
            }
            c.push(1);
            let m = pr.from_coeffs(c.iter().map(|&x| base.from_u64(x)).collect());
            if super::factor::is_irreducible_ff(&base, &m) {
                return Ok(Fq { p, d, modulus: Arc::new(c) });
            }
        }
        Err(Error::Internal("no irreducible polynomial found".into()))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    pub fn from_u64(&self, n: u64) -> FiniteFieldElement {
        let mut e = FiniteFieldElement::default();
        e.0[0] = (n % self.p) as u32;
        e
    }

    pub fn from_digits(&self, digits: &[u64]) -> FiniteFieldElement {
        let mut full = vec![0u64; digits.len().max(self.d)];
        for (i, &c) in digits.iter().enumerate() {
            full[i] = c % self.p;
        }
        self.reduce_wide(&mut full)
    }

    pub fn digits(&self, a: &FiniteFieldElement) -> Vec<u64> {
        a.0[..self.d].iter().map(|&c| c as u64).collect()
    }

    /// The class of `z`, a generator of the field over `F_p`.
    pub fn generator(&self) -> FiniteFieldElement {
        if self.d == 1 {
            // Any element works as a field generator over F_p.
            return self.from_u64(0);
        }
        self.from_digits(&[0, 1])
    }

    /// Enumerate all elements in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = FiniteFieldElement> + '_ {
        (0..self.size()).map(move |mut code| {
            let mut e = FiniteFieldElement::default();
            for i in 0..self.d {
                e.0[i] = (code % self.p) as u32;
                code /= self.p;
            }
            e
        })
    }

    fn reduce_wide(&self, c: &mut [u64]) -> FiniteFieldElement {
        let p = self.p;
        let d = self.d;
        for i in (d..c.len()).rev() {
            let t = c[i] % p;
            if t != 0 {
                for j in 0..d {
                    let m = self.modulus[j];
                    c[i - d + j] = (c[i - d + j] + (p - t) * m) % p;
                }
            }
            c[i] = 0;
        }
        let mut e = FiniteFieldElement::default();
        for i in 0..d.min(c.len()) {
            e.0[i] = (c[i] % p) as u32;
        }
        e
    }
}

impl Ring for Fq {
    type Elem = FiniteFieldElement;

    fn zero(&self) -> FiniteFieldElement {
        FiniteFieldElement::default()
    }
    fn one(&self) -> FiniteFieldElement {
        self.from_u64(1)
    }
    fn from_i64(&self, n: i64) -> FiniteFieldElement {
        self.from_u64(n.rem_euclid(self.p as i64) as u64)
    }
    fn add(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        let mut e = FiniteFieldElement::default();
        for i in 0..self.d {
            e.0[i] = ((a.0[i] as u64 + b.0[i] as u64) % self.p) as u32;
        }
        e
    }
    fn neg(&self, a: &FiniteFieldElement) -> FiniteFieldElement {
        let mut e = FiniteFieldElement::default();
        for i in 0..self.d {
            e.0[i] = ((self.p - a.0[i] as u64) % self.p) as u32;
        }
        e
    }
    fn sub(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        let mut e = FiniteFieldElement::default();
        for i in 0..self.d {
            e.0[i] = ((a.0[i] as u64 + self.p - b.0[i] as u64) % self.p) as u32;
        }
        e
    }
    fn mul(&self, a: &FiniteFieldElement, b: &FiniteFieldElement) -> FiniteFieldElement {
        if self.d == 1 {
            let mut e = FiniteFieldElement::default();
            e.0[0] = ((a.0[0] as u64 * b.0[0] as u64) % self.p) as u32;
            return e;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..self.d {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.d {
                prod[i + j] = (prod[i + j] + a.0[i] as u64 * b.0[j] as u64) % self.p;
            }
        }
        self.reduce_wide(&mut prod[..2 * self.d - 1])
    }
    fn is_zero(&self, a: &FiniteFieldElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
}

impl Field for Fq {
    fn inv(&self, a: &FiniteFieldElement) -> Option<FiniteFieldElement> {
        if self.is_zero(a) {
            return None;
        }
        if self.d == 1 {
            let p = self.p as i128;
            let (mut r0, mut r1) = (p, a.0[0] as i128);
            let (mut t0, mut t1) = (0i128, 1i128);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (t0, t1) = (t1, t0 - q * t1);
            }
            return Some(self.from_u64(t0.rem_euclid(p) as u64));
        }
        Some(self.pow(a, self.size() - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<u64> {
        Some(self.size())
    }
    fn random(&self, rng: &mut dyn RngCore) -> FiniteFieldElement {
        let mut e = FiniteFieldElement::default();
        for i in 0..self.d {
            e.0[i] = rng.gen_range(0..self.p) as u32;
        }
        e
    }
    fn render(&self, a: &FiniteFieldElement) -> String {
        if self.d == 1 {
            return a.0[0].to_string();
        }
        let mut parts = Vec::new();
        for i in 0..self.d {
            let c = a.0[i];
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{c}z"),
                (_, 1) => format!("z^{i}"),
                _ => format!("{c}z^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
    fn pth_root(&self, a: &FiniteFieldElement) -> Option<FiniteFieldElement> {
        Some(self.pow(a, self.size() / self.p))
    }
}

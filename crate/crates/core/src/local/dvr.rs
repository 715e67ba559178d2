//! Truncated complete discrete valuation rings `O / π^N`.
//!
//! A ring object carries its precision `N`; every operation reduces modulo
//! `π^N`. Algorithms move between precisions with [`Dvr::with_prec`].

use crate::arith::finite::Fq;
use crate::arith::ring::{Field, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Res<D> = <<D as Dvr>::Residue as Ring>::Elem;

pub trait Dvr: Ring {
    type Residue: Field;

    fn prec(&self) -> usize;
    fn with_prec(&self, n: usize) -> Self;
    fn residue_field(&self) -> &Self::Residue;
    /// Valuation of `a`, `None` when `a ≡ 0 mod π^N`.
    fn val(&self, a: &Self::Elem) -> Option<usize>;
    fn pi_pow(&self, k: usize) -> Self::Elem;
    /// `a / π^k`, discarding the lowest `k` digits.
    fn div_pi(&self, a: &Self::Elem, k: usize) -> Self::Elem;
    /// Inverse of a unit, `None` for non-units.
    fn unit_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn residue(&self, a: &Self::Elem) -> Res<Self>;
    /// Teichmüller-free lift: the digit expansion with a single digit.
    fn lift(&self, r: &Res<Self>) -> Self::Elem;
    /// Digits in the uniformizer, low first, exactly `prec` of them.
    fn digits(&self, a: &Self::Elem) -> Vec<Res<Self>>;
    fn from_digits(&self, digits: &[Res<Self>]) -> Self::Elem;
    fn uniformizer_name(&self) -> String;

    fn residue_char(&self) -> u64 {
        self.residue_field().characteristic()
    }

    fn mul_pi(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        self.mul(a, &self.pi_pow(k))
    }

    /// Reduce an element that may come from a ring of higher precision.
    fn reduce(&self, a: &Self::Elem) -> Self::Elem {
        self.add(a, &self.zero())
    }

    /// Divide exactly when `b` divides `a`, i.e. `val(a) >= val(b)`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let vb = self.val(b)?;
        match self.val(a) {
            None => Some(self.zero()),
            Some(va) if va >= vb => {
                let u = self.unit_inv(&self.div_pi(b, vb))?;
                Some(self.mul(&self.div_pi(a, vb), &u))
            }
            _ => None,
        }
    }

    fn render(&self, a: &Self::Elem) -> String {
        let rf = self.residue_field();
        let mut terms = Vec::new();
        for (i, d) in self.digits(a).iter().enumerate() {
            if rf.is_zero(d) {
                continue;
            }
            let c = rf.render(d);
            let u = self.uniformizer_name();
            terms.push(match i {
                0 => c,
                1 => format!("{c}*{u}"),
                _ => format!("{c}*{u}^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        format!("{} + O({}^{})", terms.join(" + "), self.uniformizer_name(), self.prec())
    }
}

/// `Z_p / p^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Zp {
    p: u64,
    prec: usize,
    pbig: BigInt,
    modulus: BigInt,
    fp: Fq,
}

impl Zp {
    pub fn new(p: u64, prec: usize) -> crate::Result<Zp> {
        let fp = Fq::prime(p)?;
        let pbig = BigInt::from(p);
        let modulus = num_traits::pow(pbig.clone(), prec);
        Ok(Zp { p, prec, pbig, modulus, fp })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.modulus)
    }

    /// Symmetric representative in `(-p^N/2, p^N/2]`.
    pub fn symmetric(&self, a: &BigInt) -> BigInt {
        let r = a.mod_floor(&self.modulus);
        if &r * 2 > self.modulus {
            r - &self.modulus
        } else {
            r
        }
    }
}

impl Ring for Zp {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one().mod_floor(&self.modulus)
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n).mod_floor(&self.modulus)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.modulus)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        (-a).mod_floor(&self.modulus)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a - b).mod_floor(&self.modulus)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.modulus)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.mod_floor(&self.modulus).is_zero()
    }
}

impl Dvr for Zp {
    type Residue = Fq;

    fn prec(&self) -> usize {
        self.prec
    }
    fn with_prec(&self, n: usize) -> Zp {
        Zp::new(self.p, n).unwrap()
    }
    fn residue_field(&self) -> &Fq {
        &self.fp
    }
    fn val(&self, a: &BigInt) -> Option<usize> {
        let mut a = a.mod_floor(&self.modulus);
        if a.is_zero() {
            return None;
        }
        let mut v = 0;
        loop {
            let (q, r) = a.div_rem(&self.pbig);
            if !r.is_zero() {
                return Some(v);
            }
            a = q;
            v += 1;
        }
    }
    fn pi_pow(&self, k: usize) -> BigInt {
        num_traits::pow(self.pbig.clone(), k).mod_floor(&self.modulus)
    }
    fn div_pi(&self, a: &BigInt, k: usize) -> BigInt {
        let a = a.mod_floor(&self.modulus);
        a.div_floor(&num_traits::pow(self.pbig.clone(), k))
    }
    fn unit_inv(&self, a: &BigInt) -> Option<BigInt> {
        let a = a.mod_floor(&self.modulus);
        if (&a % &self.pbig).is_zero() {
            return None;
        }
        if self.prec == 0 {
            return Some(BigInt::zero());
        }
        let e = a.extended_gcd(&self.modulus);
        Some(e.x.mod_floor(&self.modulus))
    }
    fn residue(&self, a: &BigInt) -> <Fq as Ring>::Elem {
        self.fp.from_u64(a.mod_floor(&self.pbig).to_u64().unwrap())
    }
    fn lift(&self, r: &<Fq as Ring>::Elem) -> BigInt {
        BigInt::from(r.0[0]).mod_floor(&self.modulus)
    }
    fn digits(&self, a: &BigInt) -> Vec<<Fq as Ring>::Elem> {
        let mut a = a.mod_floor(&self.modulus);
        let mut out = Vec::with_capacity(self.prec);
        for _ in 0..self.prec {
            let (q, r) = a.div_rem(&self.pbig);
            out.push(self.fp.from_u64(r.abs().to_u64().unwrap()));
            a = q;
        }
        out
    }
    fn from_digits(&self, digits: &[<Fq as Ring>::Elem]) -> BigInt {
        let mut acc = BigInt::zero();
        for d in digits.iter().rev() {
            acc = acc * &self.pbig + BigInt::from(d.0[0]);
        }
        acc.mod_floor(&self.modulus)
    }
    fn uniformizer_name(&self) -> String {
        self.p.to_string()
    }
}

/// `k[[u]] / u^N` for an exact field `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<K: Field> {
    k: K,
    prec: usize,
    name: &'static str,
}

impl<K: Field> PowerSeries<K> {
    pub fn new(k: K, prec: usize) -> Self {
        PowerSeries { k, prec, name: "u" }
    }

    pub fn named(k: K, prec: usize, name: &'static str) -> Self {
        PowerSeries { k, prec, name }
    }

    fn trim(&self, mut v: Vec<K::Elem>) -> Vec<K::Elem> {
        v.truncate(self.prec);
        while v.last().map_or(false, |x| self.k.is_zero(x)) {
            v.pop();
        }
        v
    }

    pub fn from_coeffs(&self, v: Vec<K::Elem>) -> Vec<K::Elem> {
        self.trim(v)
    }

    pub fn coeff(&self, a: &[K::Elem], i: usize) -> K::Elem {
        a.get(i).cloned().unwrap_or_else(|| self.k.zero())
    }
}

impl<K: Field> Ring for PowerSeries<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Vec<K::Elem> {
        Vec::new()
    }
    fn one(&self) -> Vec<K::Elem> {
        self.trim(vec![self.k.one()])
    }
    fn from_i64(&self, n: i64) -> Vec<K::Elem> {
        self.trim(vec![self.k.from_i64(n)])
    }
    fn add(&self, a: &Vec<K::Elem>, b: &Vec<K::Elem>) -> Vec<K::Elem> {
        let n = a.len().max(b.len()).min(self.prec);
        let z = self.k.zero();
        self.trim((0..n).map(|i| self.k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }
    fn neg(&self, a: &Vec<K::Elem>) -> Vec<K::Elem> {
        self.trim(a.iter().map(|x| self.k.neg(x)).collect())
    }
    fn sub(&self, a: &Vec<K::Elem>, b: &Vec<K::Elem>) -> Vec<K::Elem> {
        let n = a.len().max(b.len()).min(self.prec);
        let z = self.k.zero();
        self.trim((0..n).map(|i| self.k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }
    fn mul(&self, a: &Vec<K::Elem>, b: &Vec<K::Elem>) -> Vec<K::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let n = (a.len() + b.len() - 1).min(self.prec);
        let mut c = vec![self.k.zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if self.k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                let t = self.k.mul(x, y);
                c[i + j] = self.k.add(&c[i + j], &t);
            }
        }
        self.trim(c)
    }
    fn is_zero(&self, a: &Vec<K::Elem>) -> bool {
        a.iter().take(self.prec).all(|x| self.k.is_zero(x))
    }
}

impl<K: Field> Dvr for PowerSeries<K> {
    type Residue = K;

    fn prec(&self) -> usize {
        self.prec
    }
    fn with_prec(&self, n: usize) -> Self {
        PowerSeries { k: self.k.clone(), prec: n, name: self.name }
    }
    fn residue_field(&self) -> &K {
        &self.k
    }
    fn val(&self, a: &Vec<K::Elem>) -> Option<usize> {
        a.iter().take(self.prec).position(|x| !self.k.is_zero(x))
    }
    fn pi_pow(&self, k: usize) -> Vec<K::Elem> {
        let mut v = vec![self.k.zero(); k];
        v.push(self.k.one());
        self.trim(v)
    }
    fn div_pi(&self, a: &Vec<K::Elem>, k: usize) -> Vec<K::Elem> {
        self.trim(a.iter().skip(k).cloned().collect())
    }
    fn mul_pi(&self, a: &Vec<K::Elem>, k: usize) -> Vec<K::Elem> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.k.zero(); k];
        v.extend(a.iter().cloned());
        self.trim(v)
    }
    fn unit_inv(&self, a: &Vec<K::Elem>) -> Option<Vec<K::Elem>> {
        let a0 = a.first()?;
        let inv0 = self.k.inv(a0)?;
        let mut b = vec![inv0.clone()];
        for n in 1..self.prec {
            let mut s = self.k.zero();
            for i in 1..=n.min(a.len() - 1) {
                s = self.k.add(&s, &self.k.mul(&a[i], &b[n - i]));
            }
            b.push(self.k.neg(&self.k.mul(&s, &inv0)));
        }
        Some(self.trim(b))
    }
    fn residue(&self, a: &Vec<K::Elem>) -> K::Elem {
        self.coeff(a, 0)
    }
    fn lift(&self, r: &K::Elem) -> Vec<K::Elem> {
        self.trim(vec![r.clone()])
    }
    fn digits(&self, a: &Vec<K::Elem>) -> Vec<K::Elem> {
        (0..self.prec).map(|i| self.coeff(a, i)).collect()
    }
    fn from_digits(&self, digits: &[K::Elem]) -> Vec<K::Elem> {
        self.trim(digits.to_vec())
    }
    fn uniformizer_name(&self) -> String {
        self.name.to_string()
    }
}

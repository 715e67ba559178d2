//! Dense univariate polynomials, coefficient index = degree.

use super::ring::{Field, Ring};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    /// Coefficients, `c[i]` is the coefficient of `x^i`. No trailing zeros.
    pub c: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> Option<&E> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.c.get(i)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut c: Vec<R::Elem>) -> Poly<R::Elem> {
        while c.last().map_or(false, |x| self.base.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(&self, c: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(c.iter().map(|&n| self.base.from_i64(n)).collect())
    }

    pub fn constant(&self, a: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![a])
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, a: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut c = vec![self.base.zero(); k];
        c.push(a);
        self.from_coeffs(c)
    }

    /// `x - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn coeff_or_zero(&self, p: &Poly<R::Elem>, i: usize) -> R::Elem {
        p.c.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, a: &R::Elem, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(p.c.iter().map(|x| self.base.mul(a, x)).collect())
    }

    pub fn mul_xk(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if p.is_zero() {
            return p.clone();
        }
        let mut c = vec![self.base.zero(); k];
        c.extend(p.c.iter().cloned());
        Poly { c }
    }

    /// Keep only the terms of degree `< k`.
    pub fn truncate(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        self.from_coeffs(p.c.iter().take(k).cloned().collect())
    }

    pub fn eval(&self, p: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for a in p.c.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), a);
        }
        acc
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            p.c.iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| self.base.mul(a, &self.base.from_i64(i as i64)))
                .collect(),
        )
    }

    /// `p(q(x))`.
    pub fn compose(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = self.zero();
        for a in p.c.iter().rev() {
            acc = self.add(&self.mul(&acc, q), &self.constant(a.clone()));
        }
        acc
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, p: &Poly<R::Elem>, a: &R::Elem) -> Poly<R::Elem> {
        let n = p.c.len();
        let mut c = p.c.clone();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = self.base.mul(&c[j + 1], a);
                c[j] = self.base.add(&c[j], &t);
            }
        }
        self.from_coeffs(c)
    }

    /// `x^n p(1/x)` with `n = deg p`.
    pub fn reverse(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut c = p.c.clone();
        c.reverse();
        self.from_coeffs(c)
    }

    pub fn map<S: Ring>(&self, p: &Poly<R::Elem>, target: &PolyRing<S>, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S::Elem> {
        target.from_coeffs(p.c.iter().map(f).collect())
    }

    /// Division by a polynomial with invertible leading coefficient `lc_inv`.
    pub fn divrem_with(
        &self,
        a: &Poly<R::Elem>,
        b: &Poly<R::Elem>,
        lc_inv: &R::Elem,
    ) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let db = b.deg().expect("division by zero polynomial");
        let mut r = a.c.clone();
        if r.len() <= db {
            return (self.zero(), self.from_coeffs(r));
        }
        let mut q = vec![self.base.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let coef = self.base.mul(&r[i], lc_inv);
            if self.base.is_zero(&coef) {
                continue;
            }
            for j in 0..=db {
                let t = self.base.mul(&coef, &b.c[j]);
                r[i - db + j] = self.base.sub(&r[i - db + j], &t);
            }
            q[i - db] = coef;
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    /// Division by a monic polynomial; valid over any ring.
    pub fn divrem_monic(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let one = self.base.one();
        self.divrem_with(a, b, &one)
    }

    pub fn rem_monic(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.divrem_monic(a, b).1
    }

    /// `a^e mod m` for monic `m`.
    pub fn pow_mod_monic(&self, a: &Poly<R::Elem>, mut e: u128, m: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut base = self.rem_monic(a, m);
        let mut acc = self.rem_monic(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem_monic(&self.mul(&acc, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = self.rem_monic(&self.mul(&base, &base), m);
            }
        }
        acc
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Poly<R::Elem> {
        Poly::zero()
    }
    fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> Poly<R::Elem> {
        self.constant(self.base.from_i64(n))
    }
    fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.c.len().max(b.c.len());
        let z = self.base.zero();
        self.from_coeffs(
            (0..n)
                .map(|i| self.base.add(a.c.get(i).unwrap_or(&z), b.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }
    fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(a.c.iter().map(|x| self.base.neg(x)).collect())
    }
    fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.c.len().max(b.c.len());
        let z = self.base.zero();
        self.from_coeffs(
            (0..n)
                .map(|i| self.base.sub(a.c.get(i).unwrap_or(&z), b.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }
    fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![self.base.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                let t = self.base.mul(x, y);
                c[i + j] = self.base.add(&c[i + j], &t);
            }
        }
        self.from_coeffs(c)
    }
    fn is_zero(&self, a: &Poly<R::Elem>) -> bool {
        a.is_zero()
    }
}

impl<F: Field> PolyRing<F> {
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let inv = self.base.inv(b.lc().expect("division by zero polynomial")).unwrap();
        self.divrem_with(a, b, &inv)
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> bool {
        self.rem(b, a).is_zero()
    }

    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.lc() {
            None => p.clone(),
            Some(l) => {
                let inv = self.base.inv(l).unwrap();
                self.scale(&inv, p)
            }
        }
    }

    pub fn is_monic(&self, p: &Poly<F::Elem>) -> bool {
        p.lc().map_or(false, |l| self.base.is_one(l))
    }

    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = self.base.inv(l).unwrap();
                (self.scale(&inv, &r0), self.scale(&inv, &s0), self.scale(&inv, &t0))
            }
        }
    }

    /// Inverse of `a` modulo `m`, if coprime.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.xgcd(a, m);
        if g.deg() == Some(0) {
            Some(self.rem(&s, m))
        } else {
            None
        }
    }

    pub fn lcm(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let g = self.gcd(a, b);
        self.monic(&self.div_exact(&self.mul(a, b), &g).unwrap())
    }

    /// Monic product of the distinct irreducible factors.
    ///
    /// Fails with `Inseparable` when the derivative vanishes in positive
    /// characteristic.
    pub fn squarefree_part(&self, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if f.deg().unwrap_or(0) == 0 {
            return Ok(self.monic(f));
        }
        if self.derivative(f).is_zero() {
            return Err(Error::Inseparable);
        }
        self.radical(f)
    }

    fn radical(&self, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if f.deg().unwrap_or(0) == 0 {
            return Ok(self.one());
        }
        let d = self.derivative(f);
        if d.is_zero() {
            // f = s(x^p); take coefficientwise p-th roots when the field allows.
            let p = self.base.characteristic() as usize;
            let mut c = Vec::new();
            for (i, a) in f.c.iter().enumerate() {
                if i % p == 0 {
                    c.push(self.base.pth_root(a).ok_or(Error::Inseparable)?);
                }
            }
            return self.radical(&self.from_coeffs(c));
        }
        let g = self.gcd(f, &d);
        let mut part = self.monic(&self.div_exact(f, &g).unwrap());
        // Factors of multiplicity divisible by p are left in g only.
        let mut rest = g;
        loop {
            let c = self.gcd(&rest, &part);
            if c.deg().unwrap_or(0) == 0 {
                break;
            }
            rest = self.div_exact(&rest, &c).unwrap();
        }
        if rest.deg().unwrap_or(0) > 0 {
            let extra = self.radical(&rest)?;
            part = self.lcm(&part, &extra);
        }
        Ok(part)
    }

    pub fn is_squarefree(&self, f: &Poly<F::Elem>) -> bool {
        let d = self.derivative(f);
        !d.is_zero() && self.gcd(f, &d).deg() == Some(0)
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
        let (mut a, mut b) = (a.clone(), b.clone());
        if a.is_zero() || b.is_zero() {
            return self.base.zero();
        }
        let mut acc = self.base.one();
        loop {
            let m = a.deg().unwrap();
            let n = b.deg().unwrap();
            if n == 0 {
                return self.base.mul(&acc, &self.base.pow(&b.c[0], m as u64));
            }
            let r = self.rem(&a, &b);
            if r.is_zero() {
                return self.base.zero();
            }
            let k = r.deg().unwrap();
            let mut factor = self.base.pow(b.lc().unwrap(), (m - k) as u64);
            if (m * n) % 2 == 1 {
                factor = self.base.neg(&factor);
            }
            acc = self.base.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }

    /// `res(f, f') = (-1)^{n(n-1)/2} lc(f) disc(f)`.
    pub fn discriminant(&self, f: &Poly<F::Elem>) -> F::Elem {
        let n = f.deg().unwrap_or(0);
        let r = self.resultant(f, &self.derivative(f));
        let mut d = self.base.div(&r, f.lc().unwrap());
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            d = self.base.neg(&d);
        }
        d
    }

    pub fn render(&self, p: &Poly<F::Elem>, var: &str) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, a) in p.c.iter().enumerate().rev() {
            if self.base.is_zero(a) {
                continue;
            }
            let s = self.base.render(a);
            let coef = if i > 0 && self.base.is_one(a) { String::new() } else { format!("({s})") };
            terms.push(match i {
                0 => s,
                1 => format!("{coef}{var}"),
                _ => format!("{coef}{var}^{i}"),
            });
        }
        terms.join(" + ")
    }
}

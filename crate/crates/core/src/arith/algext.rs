//! Simple algebraic extensions `F[y]/(h(y))`.

use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};
use rand::RngCore;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct AlgExt<F: Field> {
    pub polys: PolyRing<F>,
    modulus: Arc<Poly<F::Elem>>,
    var: Arc<str>,
}

impl<F: Field> AlgExt<F> {
    /// `h` must be monic and irreducible over `base`; this is not checked here.
    pub fn new(base: F, h: Poly<F::Elem>, var: &str) -> Self {
        let polys = PolyRing::new(base);
        assert!(polys.is_monic(&h), "defining polynomial must be monic");
        AlgExt { polys, modulus: Arc::new(h), var: var.into() }
    }

    pub fn base(&self) -> &F {
        &self.polys.base
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().unwrap()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn generator(&self) -> Poly<F::Elem> {
        self.reduce(&self.polys.x())
    }

    pub fn embed(&self, a: &F::Elem) -> Poly<F::Elem> {
        self.polys.constant(a.clone())
    }

    pub fn reduce(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.polys.rem_monic(p, &self.modulus)
    }

    /// Matrix of multiplication by `a` on the power basis, rows are images.
    pub fn mul_matrix(&self, a: &Poly<F::Elem>) -> Vec<Vec<F::Elem>> {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = self.reduce(a);
        for _ in 0..n {
            rows.push((0..n).map(|j| self.polys.coeff_or_zero(&cur, j)).collect());
            cur = self.reduce(&self.polys.mul_xk(&cur, 1));
        }
        rows
    }

    /// Norm down to the base field.
    pub fn norm(&self, a: &Poly<F::Elem>) -> F::Elem {
        self.polys.resultant(&self.modulus, a)
    }
}

impl<F: Field> PartialEq for AlgExt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl<F: Field> Ring for AlgExt<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Poly<F::Elem> {
        Poly::zero()
    }
    fn one(&self) -> Poly<F::Elem> {
        self.polys.one()
    }
    fn from_i64(&self, n: i64) -> Poly<F::Elem> {
        self.polys.from_i64(n)
    }
    fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.polys.add(a, b)
    }
    fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.polys.neg(a)
    }
    fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.polys.sub(a, b)
    }
    fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.reduce(&self.polys.mul(a, b))
    }
    fn is_zero(&self, a: &Poly<F::Elem>) -> bool {
        a.is_zero()
    }
}

impl<F: Field> Field for AlgExt<F> {
    fn inv(&self, a: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        if a.is_zero() {
            return None;
        }
        self.polys.inv_mod(a, &self.modulus)
    }
    fn characteristic(&self) -> u64 {
        self.polys.base.characteristic()
    }
    fn order(&self) -> Option<u64> {
        self.polys.base.order().and_then(|q| q.checked_pow(self.degree() as u32))
    }
    fn random(&self, rng: &mut dyn RngCore) -> Poly<F::Elem> {
        let c = (0..self.degree()).map(|_| self.polys.base.random(rng)).collect();
        self.polys.from_coeffs(c)
    }
    fn render(&self, a: &Poly<F::Elem>) -> String {
        self.polys.render(a, &self.var)
    }
    fn pth_root(&self, a: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let q = self.order()?;
        let p = self.characteristic();
        Some(self.pow(a, q / p))
    }
}

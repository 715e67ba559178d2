//! Rational function fields `k(t)`.

use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};
use rand::{Rng, RngCore};

/// A reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<K: Field> {
    pub k: PolyRing<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn new(k: K) -> Self {
        RatFunc { k: PolyRing::new(k) }
    }

    pub fn constants(&self) -> &K {
        &self.k.base
    }

    pub fn polys(&self) -> &PolyRing<K> {
        &self.k
    }

    pub fn make(&self, num: Poly<K::Elem>, den: Poly<K::Elem>) -> Frac<K::Elem> {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let g = self.k.gcd(&num, &den);
        let num = self.k.div_exact(&num, &g).unwrap();
        let den = self.k.div_exact(&den, &g).unwrap();
        let l = self.k.base.inv(den.lc().unwrap()).unwrap();
        Frac { num: self.k.scale(&l, &num), den: self.k.scale(&l, &den) }
    }

    pub fn from_poly(&self, p: Poly<K::Elem>) -> Frac<K::Elem> {
        Frac { num: p, den: self.k.one() }
    }

    pub fn from_const(&self, a: K::Elem) -> Frac<K::Elem> {
        self.from_poly(self.k.constant(a))
    }

    /// The transcendental `t`.
    pub fn t(&self) -> Frac<K::Elem> {
        self.from_poly(self.k.x())
    }

    pub fn is_poly(&self, a: &Frac<K::Elem>) -> bool {
        a.den.deg() == Some(0)
    }

    /// Value at `t = a`, if the denominator does not vanish there.
    pub fn eval(&self, x: &Frac<K::Elem>, a: &K::Elem) -> Option<K::Elem> {
        let d = self.k.eval(&x.den, a);
        self.k.base.inv(&d).map(|di| self.k.base.mul(&self.k.eval(&x.num, a), &di))
    }
}

impl<K: Field> Ring for RatFunc<K> {
    type Elem = Frac<K::Elem>;

    fn zero(&self) -> Frac<K::Elem> {
        Frac { num: Poly::zero(), den: self.k.one() }
    }
    fn one(&self) -> Frac<K::Elem> {
        self.from_poly(self.k.one())
    }
    fn from_i64(&self, n: i64) -> Frac<K::Elem> {
        self.from_poly(self.k.from_i64(n))
    }
    fn add(&self, a: &Frac<K::Elem>, b: &Frac<K::Elem>) -> Frac<K::Elem> {
        if a.den == b.den {
            return self.make(self.k.add(&a.num, &b.num), a.den.clone());
        }
        let num = self.k.add(&self.k.mul(&a.num, &b.den), &self.k.mul(&b.num, &a.den));
        self.make(num, self.k.mul(&a.den, &b.den))
    }
    fn neg(&self, a: &Frac<K::Elem>) -> Frac<K::Elem> {
        Frac { num: self.k.neg(&a.num), den: a.den.clone() }
    }
    fn mul(&self, a: &Frac<K::Elem>, b: &Frac<K::Elem>) -> Frac<K::Elem> {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if self.is_poly(a) && self.is_poly(b) {
            return self.from_poly(self.k.mul(&a.num, &b.num));
        }
        self.make(self.k.mul(&a.num, &b.num), self.k.mul(&a.den, &b.den))
    }
    fn is_zero(&self, a: &Frac<K::Elem>) -> bool {
        a.num.is_zero()
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn inv(&self, a: &Frac<K::Elem>) -> Option<Frac<K::Elem>> {
        if a.num.is_zero() {
            None
        } else {
            Some(self.make(a.den.clone(), a.num.clone()))
        }
    }
    fn characteristic(&self) -> u64 {
        self.k.base.characteristic()
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn random(&self, rng: &mut dyn RngCore) -> Frac<K::Elem> {
        let deg = rng.gen_range(0..=2usize);
        let c = (0..=deg).map(|_| self.k.base.random(rng)).collect();
        self.from_poly(self.k.from_coeffs(c))
    }
    fn render(&self, a: &Frac<K::Elem>) -> String {
        let n = self.k.render(&a.num, "t");
        if self.is_poly(a) {
            n
        } else {
            format!("({n})/({})", self.k.render(&a.den, "t"))
        }
    }
}

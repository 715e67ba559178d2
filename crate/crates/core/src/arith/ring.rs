//! Ring and field objects.
//!
//! Elements are plain values; all arithmetic goes through the ring object,
//! which carries whatever context (modulus, precision, defining polynomial)
//! the elements need.

use rand::RngCore;
use std::fmt::Debug;

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + Eq + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 in characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements of a finite field.
    fn order(&self) -> Option<u64>;
    /// Pseudo-random element; small height for infinite fields.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    /// p-th root in characteristic p, where it exists and is computable.
    fn pth_root(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }
}

//! Exact arithmetic: rings and fields as objects, univariate polynomials,
//! finite fields, rational function fields, simple algebraic extensions and
//! factorization over all of them.

pub mod algext;
pub mod factor;
pub mod finite;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod ring;

pub use algext::AlgExt;
pub use factor::{factor_finite_field, factor_over_extension, factor_rationals, Factorable};
pub use finite::{FiniteFieldElement, Fq};
pub use poly::{Poly, PolyRing};
pub use ratfunc::RatFunc;
pub use rational::{Rational, Q};
pub use ring::{Field, Ring};

/// Monic gcd over a field; the gcd with zero is the other argument made monic.
pub fn poly_gcd<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
    PolyRing::new(field.clone()).gcd(a, b)
}

/// Monic product of the distinct irreducible factors of `f`.
pub fn squarefree_part<F: Field>(field: &F, f: &Poly<F::Elem>) -> crate::Result<Poly<F::Elem>> {
    PolyRing::new(field.clone()).squarefree_part(f)
}

/// Resultant of two nonzero polynomials.
pub fn resultant<F: Field>(field: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
    PolyRing::new(field.clone()).resultant(a, b)
}

//! Exact computation of discrete absolute values on finite extensions of
//! `Q` and `k(t)`, their completions, and the decomposition of tensor
//! products of such extensions.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`] exact fields, polynomials and global factorization,
//! * [`local`] truncated valuation rings, precision-tracked local elements
//!   and finite extensions of completions,
//! * [`newton`] Newton polygons, Hensel lifting and local factorization,
//! * [`order`] maximal-order decomposition used when Newton refinement stalls,
//! * [`places`] global fields and the extensions of a base place,
//! * [`tensor`] the two-place classification on `L ⊗_K M`,
//! * [`abhyankar`] and [`fiberprod`] checks built on top of it.

pub mod abhyankar;
pub mod arith;
pub mod error;
pub mod fiberprod;
pub mod local;
pub mod newton;
pub mod order;
pub mod places;
pub mod tensor;

pub use error::{Error, Result};

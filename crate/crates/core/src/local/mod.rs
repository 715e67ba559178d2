//! Completions of `Q` and `k(t)` and their finite extensions.

pub mod completion;
pub mod dvr;
pub mod element;
pub mod extension;
pub mod linalg;

pub use dvr::{Dvr, PowerSeries, Zp};



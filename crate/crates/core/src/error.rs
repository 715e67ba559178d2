//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is inseparable (derivative vanishes)")]
    Inseparable,
    #[error("requested precision {0} is below 1")]
    PrecisionUnderflow(i64),
    #[error("valuation is indeterminate at the working precision")]
    IndeterminateValuation,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("division by an exact zero")]
    DivisionByExactZero,
    #[error("factors are not coprime at the given precision")]
    NotCoprime,
    #[error("Newton refinement does not separate the factors")]
    NotRegular,
    #[error("no shift up to {0} made the polynomial regular")]
    NotRegularAfterShifts(u32),
    #[error("places lie over different base places")]
    MismatchedBasePlace,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("degree bookkeeping contradicts the Galois assumption: {0}")]
    NotGalois(String),
    #[error("residue degree {found} at the fiber; extend the constant field by degree {needed}")]
    ResidueDegreeObstruction { found: u32, needed: u32 },
    #[error("branch refinement exceeded depth {0}")]
    OracleInconclusive(u32),
    #[error("degree {0} exceeds the supported limit of {1}")]
    DegreeLimit(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable variant name, used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Inseparable => "Inseparable",
            Error::PrecisionUnderflow(_) => "PrecisionUnderflow",
            Error::IndeterminateValuation => "IndeterminateValuation",
            Error::NotAUnit => "NotAUnit",
            Error::DivisionByExactZero => "DivisionByExactZero",
            Error::NotCoprime => "NotCoprime",
            Error::NotRegular => "NotRegular",
            Error::NotRegularAfterShifts(_) => "NotRegularAfterShifts",
            Error::MismatchedBasePlace => "MismatchedBasePlace",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotGalois(_) => "NotGalois",
            Error::ResidueDegreeObstruction { .. } => "ResidueDegreeObstruction",
            Error::OracleInconclusive(_) => "OracleInconclusive",
            Error::DegreeLimit(..) => "DegreeLimit",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Unsupported(_) => "Unsupported",
            Error::Internal(_) => "Internal",
        }
    }

    /// True for failures that indicate a bug rather than a violated precondition.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

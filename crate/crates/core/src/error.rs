use thiserror::Error;

/// Errors raised by the evaluators and checkers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("indeterminate sum: +inf and -inf combined")]
    IndeterminateSum,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("direction is not in the negative recession cone (row {row}: w.k = {value:e})")]
    NotRecessionDirection { row: usize, value: f64 },

    #[error("direction is outside the recession contract of the set")]
    DirectionOutsideContract,

    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("membership contract violated: feasible at t = {feasible} but infeasible at t = {infeasible}")]
    ContractViolation { feasible: f64, infeasible: f64 },

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("base point {index} is not a member of the set")]
    BasePointNotInSet { index: usize },

    #[error("sample set is empty")]
    EmptySampleSet,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

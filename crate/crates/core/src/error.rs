use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("a simplex needs at least one weight")]
    EmptySimplex,
    #[error("ratio m/(m+n) is undefined for m = n = 0")]
    UndefinedRatio,
    #[error("value {0} is outside [0, 1]")]
    NotAProportion(String),
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("weights sum to {0}, expected exactly 1")]
    MassNotOne(String),
    #[error("outcome space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("measurement shape mismatch: {0}")]
    ShapeError(String),
    #[error("mapping undefined on outcome {0}")]
    MapDomainError(String),
    #[error("arity mismatch: {0}")]
    ArityError(String),
    #[error("empty mixture")]
    EmptyMixture,
    #[error("cannot draw from an empty urn")]
    EmptyUrn,
    #[error("invalid urn parameters: {0}")]
    BadUrn(String),
    #[error("random variable is not an indicator on the support")]
    NotIndicator,
    #[error("indicator is not satisfiable: event or complement has zero mass")]
    NotSatisfiable,
    #[error("random variables are not pointwise ordered on the support")]
    NotPointwiseOrdered,
    #[error("invalid rational literal {0:?}")]
    BadRationalLiteral(String),
    #[error("invalid encoding: {0}")]
    BadEncoding(String),
    #[error("{0} is not a member of space {1}")]
    NotInSpace(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when digesting characteristic data or a
/// Poincaré series short form.  Each variant carries enough context to
/// identify the offending datum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponents are not strictly increasing: {0}")]
    NotStrictlyIncreasing(String),
    #[error("coordinate columns violate the lexicographic ordering: {0}")]
    LexOrderViolated(String),
    #[error("redundant exponent (characteristic integer 1): {0}")]
    RedundantExponent(String),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("negative exponent coordinate: {0}")]
    NegativeExponent(String),
    #[error("not a sublattice: {0}")]
    NotASublattice(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no weight vector is strictly positive in every coordinate")]
    NoInteriorWeight,
    #[error("pairing is not integral: {0}")]
    NonIntegralPairing(String),
    #[error("denominator factor with zero exponent vector")]
    DivergentAtOrigin,
    #[error("essential matrix block structure violated: {0}")]
    BlockStructureViolation(String),
    #[error("numerator factor admits no matching denominator factor: {0}")]
    NoPairing(String),
    #[error("numerator exponents are not totally ordered coordinatewise: {0}")]
    AmbiguousOrder(String),
    #[error("linear system has no admissible solution: {0}")]
    InconsistentSystem(String),
    #[error("recovered exponents do not form a normalized sequence: {0}")]
    NotNormalizable(String),
    #[error("factor multiplicities match no known shape: {0}")]
    UnknownShape(String),
    #[error("variable groupings differ: {0}")]
    GroupMismatch(String),
    #[error("invalid plane branch data: {0}")]
    InvalidBranchData(String),
}

pub type Result<T> = std::result::Result<T, Error>;

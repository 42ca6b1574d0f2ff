//! Crate-wide error type for genuine contract violations.
//!
//! Negative but expected outcomes (a polynomial that is not divisible, a
//! linear system that is infeasible, a function that is not Morse-Bott) are
//! modeled as values in the respective modules, not as errors.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("substitution component {index} has a non-vanishing constant term")]
    NonVanishingConstantTerm { index: usize },

    #[error("linear part is singular (determinant is zero)")]
    SingularLinearPart,

    #[error("defining function is not real-valued: {detail}")]
    NonRealInput { detail: String },

    #[error("defining polynomial is identically zero")]
    ZeroDefiningPolynomial,

    #[error("defining function does not vanish at the origin")]
    NonVanishingAtOrigin,

    #[error("hypothesis violation: {0}")]
    ShapeViolation(String),

    #[error("{context}: expected a constant or linear equation")]
    NotLinear { context: String },

    #[error("chart index {index} out of range (1..={max})")]
    ChartIndexOutOfRange { index: usize, max: usize },

    #[error("pullback is identically zero")]
    ZeroPullback,

    #[error("form coefficient not divisible by u^{power} (multiplicity mismatch)")]
    UPowerMismatch { power: u32 },

    #[error("transform is not of the expected quadric shape: {detail}")]
    UnexpectedTransformShape { detail: String },

    #[error("degenerate linearization along the component ({detail})")]
    DegenerateLinearization { detail: String },

    #[error("truncation degrees are incompatible: {0} vs {1}")]
    IncompatibleTruncation(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;

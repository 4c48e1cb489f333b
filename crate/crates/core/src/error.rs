use thiserror::Error;

/// Errors reported by the workbench algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero constant term: series is not invertible")]
    NotInvertible,
    #[error("matrix is singular")]
    Singular,
    #[error("pole at evaluation point")]
    Pole,
    #[error("coordinate {0} of the point is zero")]
    ZeroCoordinate(usize),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("resonance at degree {degree}: the linear system for the gauge transform is singular")]
    Resonance { degree: u32 },
    #[error("degree growth bound exceeded: no iterate up to k = {0} strictly increases degrees")]
    DegreeGrowth(u32),
    #[error("precision insufficient: {0}")]
    Precision(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("variable name collision: {0}")]
    NameCollision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

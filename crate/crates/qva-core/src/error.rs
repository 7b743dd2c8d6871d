//! Error type shared by all engine layers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    PoleAtEvaluationPoint,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("region mismatch on variable `{0}`")]
    RegionMismatch(String),
    #[error("divergent product in variable `{0}`")]
    DivergentProduct(String),
    #[error("divergent substitution: {0}")]
    DivergentSubstitution(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
    #[error("window too narrow: {0}")]
    WindowTooNarrow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;

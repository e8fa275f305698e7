use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum GpdError {
    #[error("ambient space mismatch: {0}")]
    AmbientMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid gram matrix: {0}")]
    InvalidGram(String),
    #[error("invalid treegram: {0}")]
    InvalidTreegram(String),
    #[error("final complex is not connected: {0}")]
    Disconnected(String),
    #[error("function is not intersection-monotone at step pair ({i}, {j}): {msg}")]
    NotIntersectionMonotone { i: usize, j: usize, msg: String },
    #[error("diagonal interval is outside the reverse inclusion domain")]
    DiagonalInterval,
    #[error("missing interval value: {0}")]
    MissingInterval(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, GpdError>;

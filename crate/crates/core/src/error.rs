use thiserror::Error;

/// Errors raised by state handling, curve evaluation and hull construction.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid dimensions {m}x{n}: {reason}")]
    InvalidDims { m: usize, n: usize, reason: &'static str },

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("invalid Schmidt vector: {0}")]
    InvalidSchmidt(String),

    #[error("Renyi order must be a nonnegative number, got {0}")]
    InvalidAlpha(f64),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("operator too large for explicit two-copy construction (m*n = {0} > 8)")]
    TooLarge(usize),

    #[error("decomposition size {k} is smaller than the state rank {rank}")]
    DecompositionTooSmall { k: usize, rank: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("the printed branch table has no formula for alpha = {0}")]
    UnsupportedBranchAlpha(f64),

    #[error("no tangency in [{lo}, {hi}]")]
    NoTangency { lo: f64, hi: f64 },

    #[error("tangency is degenerate: the curve is linear through the anchor on [{lo}, {hi}]")]
    DegenerateTangency { lo: f64, hi: f64 },

    #[error("hull refinement failed near c = {c}: {reason}")]
    Refinement { c: f64, reason: &'static str },

    #[error("not a density matrix: {0}")]
    InvalidState(String),

    #[error("state file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

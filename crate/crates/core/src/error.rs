use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("invalid bounds at dimension {index}: lower {lower} must be below upper {upper}")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },

    #[error("objective `{problem}` returned non-finite value {value}")]
    NonFiniteObjective { problem: String, value: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown problem `{0}` (expected sphere, griewank, rastrigin or rosenbrock)")]
    UnknownProblem(String),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("instance with {n} cities is too large for exhaustive search (max {max})")]
    TooLarge { n: usize, max: usize },

    #[error("instance parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("campaigns are not comparable: {0}")]
    Mismatch(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

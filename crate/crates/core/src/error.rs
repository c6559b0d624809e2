use std::path::PathBuf;

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrError {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),

    #[error("i/o error: {0}")]
    Io(String),

    /// `row` is the 1-based data row (header excluded).
    #[error("cannot parse value at row {row}, column '{column}'")]
    Parse { row: usize, column: String },

    #[error("column '{0}' not found")]
    MissingColumn(String),

    #[error("sample too short: n = {n}, need at least {min}")]
    ShortSample { n: usize, min: usize },

    /// `row` is the 1-based data row (header excluded).
    #[error("non-finite value at row {0}")]
    NonFiniteValue(usize),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("degenerate variance: {0} is constant")]
    DegenerateVariance(&'static str),

    #[error("too few points for binning: n = {n} < b = {b}")]
    TooFewPoints { n: usize, b: usize },

    #[error("invalid bin count {0}: need b >= 2")]
    InvalidBinCount(usize),

    #[error("every y equals the median: Y is constant")]
    AllTied,

    #[error("X is constant")]
    ConstantX,

    #[error("Y is constant")]
    ConstantY,

    #[error("within-class scatter matrix is singular")]
    SingularScatter,

    #[error("too many features: M = {0} (max 16)")]
    TooManyFeatures(usize),

    #[error("invalid split plan: {0}")]
    InvalidPlan(String),

    #[error("prediction direction undefined for kappa = 0")]
    UndefinedDirection,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, CorrError>;

impl From<std::io::Error> for CorrError {
    fn from(e: std::io::Error) -> Self {
        CorrError::Io(e.to_string())
    }
}

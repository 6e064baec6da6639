use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid sign entry {0}; entries must be -1 or +1")]
    InvalidSign(i64),
    #[error("sign vector length {len} outside supported range 1..={max}")]
    InvalidLength { len: usize, max: usize },
    #[error("{what}: got {got}, need {need}")]
    OutOfRange {
        what: &'static str,
        got: String,
        need: &'static str,
    },
    #[error("sign vector {0} is not in K")]
    NotInK(String),
    #[error("integer coefficient overflow in {0}")]
    Overflow(&'static str),
    #[error("coefficient of degree {degree} becomes non-real under the star transform")]
    NonRealStar { degree: usize },
    #[error(
        "root finder did not converge after {iterations} iterations (max residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid bracket [{lo}, {hi}]: no sign change")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("Jacobi SVD did not converge after {0} sweeps")]
    JacobiNoConvergence(usize),
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

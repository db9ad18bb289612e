use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("alpha[{index}] = {value} violates alpha >= -1/2")]
    AlphaBound { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("coordinate {j} out of range for dimension {dim}")]
    CoordinateOutOfRange { j: usize, dim: usize },

    #[error("non-finite function value {value} at quadrature node {index} ({point:?})")]
    NonFinite {
        index: usize,
        point: Vec<f64>,
        value: f64,
    },

    #[error("points too close to the diagonal or a reflected diagonal: distance {distance:e} < {limit:e}")]
    NearDiagonal { distance: f64, limit: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

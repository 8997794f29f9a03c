use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by state construction, frame operations, and the
/// generators. All numerical operations on already-validated values are
/// total and do not appear here.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("state vector is numerically zero")]
    ZeroState,

    #[error("matrix is numerically zero")]
    ZeroMatrix,

    #[error("matrix is not unitary (max residual = {residual})")]
    NotUnitary { residual: f64 },

    #[error("amplitude has a non-finite component")]
    NonFinite,

    #[error("schmidt coefficient {lambda} outside [0, 1/2]")]
    InvalidLambda { lambda: f64 },

    #[error("tolerance {tol} must be positive and finite")]
    InvalidTolerance { tol: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

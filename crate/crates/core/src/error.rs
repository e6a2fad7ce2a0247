use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("matrix is not Hermitian (max |A_kl - conj(A_lk)| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (||U^dag U - I||_F = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("invalid projector: {0}")]
    InvalidProjector(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state vector has (near) zero norm")]
    ZeroState,

    #[error("state is not normalized (||psi||^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("initial state is not in the range of the projector (||P psi - psi|| = {residual:e})")]
    NotPrepared { residual: f64 },

    #[error("Bloch point violates u^2 = x^2 + y^2 + z^2 (residual {residual:e})")]
    ConstraintViolation { residual: f64 },

    #[error("short-time extrapolation failed: {0}")]
    Extrapolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("format error: {0}")]
    Format(String),
}

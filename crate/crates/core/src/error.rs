use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("exponent tuple must be non-empty")]
    EmptyTuple,

    #[error("non-finite exponent at index {index}")]
    NonFinite { index: usize },

    #[error("negative input where a non-negative value is required")]
    Negative,

    #[error("input is not sorted in non-increasing order")]
    Unsorted,

    #[error("tuples are not weakly submajorized (first failing prefix k = {prefix})")]
    NotSubmajorized { prefix: usize },

    #[error("sinh-product terms mix even and odd factor counts")]
    MixedParity,

    #[error("unsupported input: {0}")]
    Unsupported(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("function value is not finite at {at}")]
    Evaluation { at: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),

    #[error("quadrature failed to reach tolerance (estimated error {estimate:e})")]
    Quadrature { estimate: f64 },
}

impl Error {
    /// Whether the failure is numerical rather than a problem with the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::Quadrature { .. } | Error::Evaluation { .. }
        )
    }
}

use thiserror::Error;

pub type Result<T, E = DecoError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecoError {
    #[error("amplitudes are not normalized: |psi|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error(
        "invalid density matrix: hermiticity residual {hermiticity:e}, \
         trace residual {trace:e}, min eigenvalue {min_eigenvalue:e}"
    )]
    InvalidMatrix {
        hermiticity: f64,
        trace: f64,
        min_eigenvalue: f64,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("quadrature did not converge: achieved relative change {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("Fock truncation too coarse: top-level population {indicator:e} (limit {limit:e})")]
    Truncation { indicator: f64, limit: f64 },

    #[error("Hilbert space dimension {dim} exceeds the limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
}

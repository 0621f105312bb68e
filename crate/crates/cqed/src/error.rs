//! Error types shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CqedError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator spaces differ: {0}")]
    SpaceMismatch(String),

    #[error("site {site} does not support kind {kind}: {detail}")]
    BadSiteKind {
        site: usize,
        kind: String,
        detail: String,
    },

    #[error("operator is not Hermitian (defect {defect:.3e})")]
    NonHermitian { defect: f64 },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("invalid parameter {name}: {detail}")]
    InvalidParameter { name: String, detail: String },

    #[error("dipole-forbidden transition ({j},{k}): x matrix element vanishes")]
    ForbiddenTransition { j: usize, k: usize },

    #[error("degenerate steady state: null space dimension {dim}")]
    DegenerateSteadyState { dim: usize },

    #[error("solver residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    SolverResidual { residual: f64, tol: f64 },

    #[error("linear algebra backend failure: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),
}

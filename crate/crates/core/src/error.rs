use thiserror::Error;

/// Errors produced by matrix constructors, box validation and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("matrix deviates from Hermitian symmetry by {deviation:e} (allowed {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e}, tolerance {tol:e})")]
    NotPsd { min_eig: f64, tol: f64 },

    #[error("sigma component must be positive definite (min eigenvalue {min_eig:e})")]
    SigmaNotPd { min_eig: f64 },

    #[error("box arity mismatch: m = {0} vs m = {1}")]
    ArityMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension guard exceeded: {0}")]
    DimGuard(String),

    #[error(
        "solver did not converge after {iterations} iterations \
         (gap {gap:e}, primal residual {primal:e}, dual residual {dual:e})"
    )]
    SolverStalled {
        iterations: usize,
        gap: f64,
        primal: f64,
        dual: f64,
    },

    #[error("linear program is unbounded")]
    LpUnbounded,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

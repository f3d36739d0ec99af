use thiserror::Error;

use crate::hermitian::HermitianReport;

/// Errors shared across the library.
///
/// Several variants double as mathematical diagnoses: `SingularMatrix`
/// signals a degenerate Frobenius form, `IncompatiblePair` that a pair
/// (algebra, hermitian form) violates the Hermitian axiom, and
/// `NotPositiveDefinite` that a Hermitian pair is not unitary.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix at tolerance {tol:.3e} (pivot magnitude {pivot:.3e})")]
    SingularMatrix { pivot: f64, tol: f64 },

    #[error("operators do not commute: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotCommuting { residual: f64, tol: f64 },

    #[error("operator is not self-adjoint for the given form: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotSelfAdjoint { residual: f64, tol: f64 },

    #[error("form is not positive definite: eigenvalue {eigenvalue:.3e} at tolerance {tol:.3e}")]
    FormNotPositive { eigenvalue: f64, tol: f64 },

    #[error("hermitian form is not positive definite: eigenvalue {eigenvalue:.3e} at tolerance {tol:.3e}")]
    NotPositiveDefinite { eigenvalue: f64, tol: f64 },

    #[error("fixed subspace has real dimension {found}, expected {expected}")]
    RankDeficient { found: usize, expected: usize },

    #[error("pair fails the Hermitian axiom checks: {0}")]
    IncompatiblePair(HermitianReport),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("non-finite number in {0}")]
    NonFinite(String),

    #[error("result too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

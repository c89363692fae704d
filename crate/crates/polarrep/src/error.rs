//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a precondition (dimensions, finiteness, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A bilinear or Hermitian form is degenerate where a nondegenerate one is required.
    #[error("degenerate form: {0}")]
    DegenerateForm(String),

    /// An operator expected to be positive-definite has a non-positive eigenvalue.
    #[error("not positive-definite: {0}")]
    NotPositiveDefinite(String),

    /// A model fails one of its structural identities; lists the violated identity and residual.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A vector fails the semisimplicity/regularity precondition of an operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Internally inconsistent data detected mid-computation.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    /// A bounded numerical search did not converge.
    #[error("search failed: {0}")]
    SearchFailure(String),

    /// The minimal-vector gradient flow did not converge within its iteration cap.
    #[error("flow failed: {0}")]
    FlowFailure(String),

    /// Requested named object does not exist.
    #[error("not found: {0}")]
    NotFound(String),

    /// A transform was requested for a root that does not admit it.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

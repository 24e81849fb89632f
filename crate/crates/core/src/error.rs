use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// `Invalid*` variants describe a violated precondition on the inputs;
/// `Numerical*` variants signal that a computation rejected its data
/// (non-positive Monge–Ampère value, failed peak validation, ...).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point is not on the boundary (|defining function| = {residual:e})")]
    NotOnBoundary { residual: f64 },

    #[error("point is outside the body or domain")]
    OutsideDomain,

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("singular or degenerate data: {0}")]
    Degenerate(String),

    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("numerical rejection: {0}")]
    Numerical(String),

    #[error("peak validation failed: zero set re-enters the closure near {witness:?}")]
    PeakValidation { witness: Vec<f64> },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors that describe bad inputs rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Unsupported(_) | Error::NotSymmetric { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

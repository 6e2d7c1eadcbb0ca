use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// A parameter set violates a space invariant; the message names the rule.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("quadrature did not reach tolerance {requested:e} (achieved {achieved:e})")]
    Convergence { requested: f64, achieved: f64 },

    #[error("eigen-iteration did not converge (residual {residual:e})")]
    Eigen { residual: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

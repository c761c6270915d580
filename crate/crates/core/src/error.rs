use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on user-supplied parameters failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A factorization hit a pivot below the singularity threshold.
    #[error("matrix numerically singular at pivot {pivot}")]
    SingularMatrix { pivot: usize },
    /// An iterative algorithm ran out of its iteration budget.
    #[error("{algorithm} did not converge (index {index})")]
    NoConvergence {
        algorithm: &'static str,
        index: usize,
    },
    /// Adaptive quadrature could not reach the requested agreement.
    #[error("quadrature did not reach {requested:e} relative agreement (achieved {achieved:e})")]
    QuadratureAccuracy { requested: f64, achieved: f64 },
    /// A least-squares fit was refused (too few samples or inputs too noisy).
    #[error("fit refused: {0}")]
    FitRefused(String),
    /// A mathematically exact statement was violated numerically.
    #[error("property violation: {0}")]
    PropertyViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

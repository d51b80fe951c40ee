use thiserror::Error;

use crate::analysis::DegenerateSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive integrator exhausted its subdivision budget.
    #[error("quadrature failed to converge: estimate {estimate}, error bound {error_bound}")]
    Quadrature { estimate: f64, error_bound: f64 },

    /// The initial point lies on the zero set of the homogeneous solution,
    /// so the problem has either no solution or infinitely many.
    #[error("problem is not uniquely solvable at t0 = {t0} (homogeneous solution there is {utilde_t0:e}); degenerate set: {degenerate}")]
    NonUnique {
        t0: f64,
        utilde_t0: f64,
        degenerate: DegenerateSet,
    },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Short machine-readable tag, used by the CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Domain(_) => "domain",
            Error::Quadrature { .. } => "quadrature-failure",
            Error::NonUnique { .. } => "nonunique-problem",
            Error::HypothesisViolated(_) => "hypothesis-violated",
        }
    }
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {x}")))
    }
}

use thiserror::Error;

use crate::ast::Interval;
use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MltlError {
    #[error("ill-formed interval {0}: lower bound exceeds upper bound")]
    IllFormedInterval(Interval),

    #[error("equivalence budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The progressed residual was equivalent to neither constant even though
    /// the trace covered the computation length.
    #[error("dichotomy violation: residual {residual} is equivalent to neither true nor false")]
    DichotomyViolation { residual: String },

    #[error("benchmark cross-check failed: {0}")]
    CrossCheckFailed(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = MltlError> = std::result::Result<T, E>;

/// Fails with [`MltlError::IllFormedInterval`] on the first bad interval.
pub(crate) fn require_welldef(f: &crate::ast::Formula) -> Result<()> {
    match f.first_ill_formed() {
        Some(iv) => Err(MltlError::IllFormedInterval(iv)),
        None => Ok(()),
    }
}

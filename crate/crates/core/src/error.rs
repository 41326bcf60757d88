//! Error type shared across the crate.

/// Errors produced by parameter validation and numerical routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A parameter violated its admissibility range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An adaptive quadrature could not reach the requested tolerance
    /// within its panel budget. Carries the best estimate and its
    /// error bound so callers can decide whether to proceed.
    #[error("quadrature tolerance not met ({context}): estimate {estimate} +/- {error_bound}")]
    QuadratureFailure {
        estimate: f64,
        error_bound: f64,
        context: String,
    },

    /// A series evaluation exhausted its iteration budget.
    #[error("series did not converge within {iterations} terms ({context})")]
    NonConvergence { iterations: usize, context: String },

    /// A function offered as a convolution window failed the vanishing
    /// moment requirements of its class.
    #[error("moment class violation: {0}")]
    InvalidPhi(String),

    /// A computation was rejected up front because its estimated
    /// quadrature count exceeds the configured budget.
    #[error("estimated quadrature cost {estimated} exceeds budget {budget}")]
    BudgetExceeded { estimated: u64, budget: u64 },

    /// An integrand or intermediate value came out NaN or infinite.
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A special function was called outside its supported domain.
    #[error("{function}: argument {value} outside the domain (0, inf)")]
    Domain { function: &'static str, value: f64 },

    #[error("empty integration interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    /// The integrand would be evaluated outside the function's domain.
    #[error("interval [{lo}, {hi}] leaves the domain [{domain_lo}, {domain_hi}] of {name}")]
    OutOfDomain {
        name: String,
        lo: f64,
        hi: f64,
        domain_lo: f64,
        domain_hi: f64,
    },

    /// Quadrature stopped before reaching the requested tolerance.
    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate}, error {abs_err})")]
    Convergence {
        estimate: f64,
        abs_err: f64,
        subdivisions: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A parameter that the selected formula needs was not supplied.
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),

    /// A theorem was requested whose hypothesis is not certified.
    #[error("hypothesis not established: {0}")]
    Hypothesis(String),
}

pub type Result<T> = core::result::Result<T, Error>;

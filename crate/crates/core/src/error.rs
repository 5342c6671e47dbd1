use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// Points and parameters are reported as `f64` so the error type does not
/// depend on the scalar type of the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Jacobi parameters (alpha = {alpha}, beta = {beta}): both must be finite and > -1")]
    InvalidParams { alpha: f64, beta: f64 },

    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("finite-difference stencil at x = {x} (order {order}, step {step}) leaves the domain [{a}, {b}]")]
    Stencil {
        x: f64,
        order: usize,
        step: f64,
        a: f64,
        b: f64,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("evaluation of `{label}` at x = {x} produced a non-finite value ({value})")]
    Evaluation { label: String, x: f64, value: f64 },

    #[error("{what} = {value} is out of range (limit {limit})")]
    Range {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("eigenvalue iteration did not converge: index {index} after {sweeps} sweeps (m = {size}, residual {residual:e})")]
    NoConvergence {
        index: usize,
        sweeps: usize,
        size: usize,
        residual: f64,
    },

    #[error("point x = {x} is excluded: {reason}")]
    ExcludedPoint { x: f64, reason: &'static str },

    #[error("x = {x} is outside the truncation domain |x - {center}| <= {radius}")]
    Truncation { x: f64, center: f64, radius: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

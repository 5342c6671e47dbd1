//! Multiplicative calculus and multiplicative Jacobi polynomials.
//!
//! Every numeric routine is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64` for everyday use.
//! Quadrature moments are computed exactly with big rationals.

mod dword;
pub mod error;
pub mod fourier;
pub mod jacobi;
pub mod mulcore;
pub mod muljac;
pub mod odeseries;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod special;
pub mod tridiag;

pub use error::{Error, Result};
pub use fourier::{
    build_approximant, classical_fourier_coeff, classical_fourier_coeffs, grid_report,
    log_residual_norm, mul_fourier_coeff, mul_fourier_coeffs, weighted_l2_error, Approximant,
    ApproximantKind, Grid, GridReport, GridRow, RealFn, SupErrors, Target,
};
pub use jacobi::{
    jacobi_coeffs, jacobi_deriv, jacobi_eval, jacobi_eval_all, jacobi_norm2, JacobiParams,
};
pub use mulcore::{
    odot, oplus, star_derivative, star_derivative_log, star_inner, star_integral, ExpReal,
    Interval, PositiveFunction,
};
pub use muljac::{
    chebyshev_identity_suite, mul_jacobi_log, mul_jacobi_ode_residual, mul_recurrence_check, mul_rodrigues_log,
    mul_star_derivative, Family, MulJacobiPoly,
};
pub use odeseries::{
    detect_polynomial, ode_log_residual, polynomial_solution_at_one, pq_sequences,
    series_solution_at_one, series_solution_at_zero, Center, SeriesParams, SeriesSolution,
};
pub use poly::MonomialPoly;
pub use quad::{gauss_jacobi_rule, gauss_legendre_rule, integrate_weighted, moment, QuadratureRule};
pub use scalar::Real;

pub type Params = JacobiParams<f64>;
pub type Rule = QuadratureRule<f64>;
pub type PosFn = PositiveFunction<f64>;
pub type Poly = MonomialPoly<f64>;
pub type Span = Interval<f64>;
pub type MulPoly = MulJacobiPoly<f64>;
pub type Series = SeriesSolution<f64>;
pub type SeriesSpec = SeriesParams<f64>;
pub type Approx = Approximant<f64>;

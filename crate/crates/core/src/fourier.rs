//! Classical partial sums `Σ(N)`, multiplicative partial products `Π(N)` and
//! hybrid approximants `PΠ(N, M) = (Σ c_n P_n) · exp(Σ f_n P_n)`.
//!
//! Coefficients are weighted projections onto `P_n^{(α,β)}`:
//! `c_n = ⟨g, P_n⟩_ω / h_n` for a classical target `g`, and
//! `f_n = ⟨ln f, P_n⟩_ω / h_n` for a positive target `f`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_eval_all, jacobi_norm2, JacobiParams};
use crate::mulcore::{Interval, PositiveFunction};
use crate::quad::QuadratureRule;
use crate::scalar::Real;

/// A real-valued target, possibly negative.
pub type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApproximantKind {
    Classical,
    Multiplicative,
    Hybrid,
}

impl ApproximantKind {
    pub fn name(self) -> &'static str {
        match self {
            ApproximantKind::Classical => "classical",
            ApproximantKind::Multiplicative => "multiplicative",
            ApproximantKind::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for ApproximantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ApproximantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(ApproximantKind::Classical),
            "multiplicative" => Ok(ApproximantKind::Multiplicative),
            "hybrid" => Ok(ApproximantKind::Hybrid),
            other => Err(Error::Config(format!("unknown approximation mode `{other}`"))),
        }
    }
}

/// Truncated expansion in the Jacobi basis of `params`.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximant<T> {
    kind: ApproximantKind,
    params: JacobiParams<T>,
    coeffs_c: Vec<T>,
    coeffs_f: Vec<T>,
}

fn basis_sum<T: Real>(coeffs: &[T], basis: &[T]) -> T {
    coeffs.iter().zip(basis).fold(T::zero(), |acc, (&c, &p)| acc + c * p)
}

impl<T: Real> Approximant<T> {
    pub fn classical(params: JacobiParams<T>, coeffs: Vec<T>) -> Self {
        Self {
            kind: ApproximantKind::Classical,
            params,
            coeffs_c: coeffs,
            coeffs_f: Vec::new(),
        }
    }

    pub fn multiplicative(params: JacobiParams<T>, coeffs: Vec<T>) -> Self {
        Self {
            kind: ApproximantKind::Multiplicative,
            params,
            coeffs_c: Vec::new(),
            coeffs_f: coeffs,
        }
    }

    pub fn hybrid(params: JacobiParams<T>, coeffs_c: Vec<T>, coeffs_f: Vec<T>) -> Self {
        Self {
            kind: ApproximantKind::Hybrid,
            params,
            coeffs_c,
            coeffs_f,
        }
    }

    pub fn kind(&self) -> ApproximantKind {
        self.kind
    }

    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    /// Classical coefficients `c_0..c_M` (or `c_0..c_N` for a classical sum).
    pub fn coeffs_c(&self) -> &[T] {
        &self.coeffs_c
    }

    /// Multiplicative exponents `f_0..f_N`.
    pub fn coeffs_f(&self) -> &[T] {
        &self.coeffs_f
    }

    /// Short label such as `Π(15)` or `PΠ(15,4)`.
    pub fn label(&self) -> String {
        let deg = |v: &[T]| v.len().saturating_sub(1);
        match self.kind {
            ApproximantKind::Classical => format!("Σ({})", deg(&self.coeffs_c)),
            ApproximantKind::Multiplicative => format!("Π({})", deg(&self.coeffs_f)),
            ApproximantKind::Hybrid => format!("PΠ({},{})", deg(&self.coeffs_f), deg(&self.coeffs_c)),
        }
    }

    fn basis(&self, x: T) -> Vec<T> {
        let n = self.coeffs_c.len().max(self.coeffs_f.len()).max(1) - 1;
        jacobi_eval_all(n, &self.params, x)
    }

    /// `Σ c_n P_n(x)`; zero when there is no classical part.
    pub fn classical_part(&self, x: T) -> T {
        basis_sum(&self.coeffs_c, &self.basis(x))
    }

    /// `Σ f_n P_n(x)`; zero when there is no multiplicative part.
    pub fn exponent(&self, x: T) -> T {
        basis_sum(&self.coeffs_f, &self.basis(x))
    }

    pub fn value(&self, x: T) -> T {
        let basis = self.basis(x);
        match self.kind {
            ApproximantKind::Classical => basis_sum(&self.coeffs_c, &basis),
            ApproximantKind::Multiplicative => basis_sum(&self.coeffs_f, &basis).exp(),
            ApproximantKind::Hybrid => basis_sum(&self.coeffs_c, &basis) * basis_sum(&self.coeffs_f, &basis).exp(),
        }
    }

    /// `ln` of the approximant, or `None` where its value is not positive.
    /// For the multiplicative kind this never leaves the log domain.
    pub fn log_value(&self, x: T) -> Option<T> {
        let basis = self.basis(x);
        let exponent = basis_sum(&self.coeffs_f, &basis);
        match self.kind {
            ApproximantKind::Multiplicative => Some(exponent),
            ApproximantKind::Classical | ApproximantKind::Hybrid => {
                let c = basis_sum(&self.coeffs_c, &basis);
                (c > T::zero()).then(|| c.ln() + exponent)
            }
        }
    }
}

// P_0..P_{n_max} at every node, one row per node.
fn basis_table<T: Real>(n_max: usize, rule: &QuadratureRule<T>) -> Vec<Vec<T>> {
    rule.nodes()
        .par_iter()
        .map(|&x| jacobi_eval_all(n_max, rule.params(), x))
        .collect()
}

fn project<T: Real>(values: &[T], n_max: usize, rule: &QuadratureRule<T>) -> Vec<T> {
    let table = basis_table(n_max, rule);
    let weights = rule.weights();
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut acc = T::zero();
            for ((row, &w), &v) in table.iter().zip(weights).zip(values) {
                acc = acc + w * v * row[n];
            }
            acc / jacobi_norm2(n, rule.params())
        })
        .collect()
}

fn sample<T: Real>(g: &(dyn Fn(T) -> T + Sync), label: &str, rule: &QuadratureRule<T>) -> Result<Vec<T>> {
    rule.nodes()
        .iter()
        .map(|&x| {
            let v = g(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Evaluation {
                    label: label.to_string(),
                    x: x.as_f64(),
                    value: v.as_f64(),
                })
            }
        })
        .collect()
}

fn log_samples<T: Real>(f: &PositiveFunction<T>, rule: &QuadratureRule<T>) -> Result<Vec<T>> {
    rule.nodes().iter().map(|&x| f.log_at(x)).collect()
}

/// `f_0..f_{n_max}` of a positive function. `ln f` is sampled once; the
/// projections for different `n` run in parallel.
pub fn mul_fourier_coeffs<T: Real>(
    f: &PositiveFunction<T>,
    n_max: usize,
    rule: &QuadratureRule<T>,
) -> Result<Vec<T>> {
    Ok(project(&log_samples(f, rule)?, n_max, rule))
}

/// `f_n = h_n^{-1} ∫ ln f · P_n ω dx`.
pub fn mul_fourier_coeff<T: Real>(f: &PositiveFunction<T>, n: usize, rule: &QuadratureRule<T>) -> Result<T> {
    let values = log_samples(f, rule)?;
    Ok(single_projection(&values, n, rule))
}

fn single_projection<T: Real>(values: &[T], n: usize, rule: &QuadratureRule<T>) -> T {
    let mut acc = T::zero();
    for ((&x, &w), &v) in rule.nodes().iter().zip(rule.weights()).zip(values) {
        acc = acc + w * v * jacobi_eval_all(n, rule.params(), x)[n];
    }
    acc / jacobi_norm2(n, rule.params())
}

/// `c_0..c_{n_max}` of a real function.
pub fn classical_fourier_coeffs<T: Real>(
    g: &(dyn Fn(T) -> T + Sync),
    n_max: usize,
    rule: &QuadratureRule<T>,
) -> Result<Vec<T>> {
    Ok(project(&sample(g, "target", rule)?, n_max, rule))
}

/// `c_n = h_n^{-1} ∫ g · P_n ω dx`.
pub fn classical_fourier_coeff<T: Real>(
    g: &(dyn Fn(T) -> T + Sync),
    n: usize,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let values = sample(g, "target", rule)?;
    Ok(single_projection(&values, n, rule))
}

/// What [`build_approximant`] expands.
#[derive(Clone)]
pub enum Target<T> {
    /// `Σ(N)` of a real function.
    Classical(RealFn<T>),
    /// `Π(N)` of a positive function.
    Multiplicative(PositiveFunction<T>),
    /// `PΠ(N, M)` for a caller-supplied factorization `f = π · r`: `c_n` of
    /// `π` up to `M` and `f_n` of `r` up to `N`.
    Hybrid {
        polynomial: RealFn<T>,
        positive: PositiveFunction<T>,
    },
}

impl<T: Real> Target<T> {
    /// The classical target `x ↦ f(x)` of a positive function.
    pub fn classical_of(f: &PositiveFunction<T>) -> Self {
        let f = f.clone();
        Target::Classical(Arc::new(move |x| f.log_raw(x).exp()))
    }

    pub fn kind(&self) -> ApproximantKind {
        match self {
            Target::Classical(_) => ApproximantKind::Classical,
            Target::Multiplicative(_) => ApproximantKind::Multiplicative,
            Target::Hybrid { .. } => ApproximantKind::Hybrid,
        }
    }
}

impl<T: Real> fmt::Debug for Target<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Classical(_) => f.write_str("Target::Classical(..)"),
            Target::Multiplicative(p) => f.debug_tuple("Target::Multiplicative").field(p).finish(),
            Target::Hybrid { positive, .. } => f.debug_struct("Target::Hybrid").field("positive", positive).finish(),
        }
    }
}

/// Expands `target` in the basis of `rule.params()`. `n` is the degree of the
/// classical sum or of the multiplicative part; `m` is the classical degree
/// of a hybrid and ignored otherwise.
pub fn build_approximant<T: Real>(
    target: &Target<T>,
    n: usize,
    m: usize,
    rule: &QuadratureRule<T>,
) -> Result<Approximant<T>> {
    let params = *rule.params();
    Ok(match target {
        Target::Classical(g) => Approximant::classical(params, classical_fourier_coeffs(g.as_ref(), n, rule)?),
        Target::Multiplicative(f) => Approximant::multiplicative(params, mul_fourier_coeffs(f, n, rule)?),
        Target::Hybrid { polynomial, positive } => Approximant::hybrid(
            params,
            classical_fourier_coeffs(polynomial.as_ref(), m, rule)?,
            mul_fourier_coeffs(positive, n, rule)?,
        ),
    })
}

/// `‖ln f - Σ f_n P_n‖_ω`, the log of the *-norm of `f / Π(N)`.
pub fn log_residual_norm<T: Real>(
    f: &PositiveFunction<T>,
    ap: &Approximant<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    if ap.kind() != ApproximantKind::Multiplicative {
        return Err(Error::Config(format!(
            "log residual norm needs a multiplicative approximant, got {}",
            ap.kind()
        )));
    }
    let mut acc = T::zero();
    for (x, w) in rule.iter() {
        let d = f.log_at(x)? - ap.exponent(x);
        acc = acc + w * d * d;
    }
    Ok(acc.sqrt())
}

/// `‖f - ap‖_ω` in value space, for any kind.
pub fn weighted_l2_error<T: Real>(
    f: &PositiveFunction<T>,
    ap: &Approximant<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let mut acc = T::zero();
    for (x, w) in rule.iter() {
        let d = f.value_at(x)? - ap.value(x);
        acc = acc + w * d * d;
    }
    Ok(acc.sqrt())
}

/// Evaluation points for [`grid_report`].
#[derive(Debug, Clone, PartialEq)]
pub enum Grid<T> {
    /// `count ≥ 2` equispaced points from `a` to `b`, endpoints included.
    Uniform { count: usize, a: T, b: T },
    Points(Vec<T>),
}

impl<T: Real> Grid<T> {
    /// `count` equispaced points on `[-1, 1]`.
    pub fn uniform(count: usize) -> Self {
        Grid::Uniform {
            count,
            a: -T::one(),
            b: T::one(),
        }
    }

    pub fn uniform_on(count: usize, a: T, b: T) -> Self {
        Grid::Uniform { count, a, b }
    }

    /// The points, after checking that they lie in `[-1, 1]`.
    pub fn points(&self) -> Result<Vec<T>> {
        let pts = match self {
            Grid::Uniform { count, a, b } => {
                if *count < 2 {
                    return Err(Error::Config(format!("grid needs at least 2 points, got {count}")));
                }
                Interval::new(*a, *b)?;
                let step = (*b - *a) / T::of_usize(count - 1);
                (0..*count)
                    .map(|i| if i + 1 == *count { *b } else { *a + step * T::of_usize(i) })
                    .collect()
            }
            Grid::Points(p) => p.clone(),
        };
        if let Some(&bad) = pts.iter().find(|x| !(x.abs() <= T::one())) {
            return Err(Error::Config(format!("grid point {bad} lies outside [-1, 1]")));
        }
        Ok(pts)
    }
}

/// One grid point of a [`GridReport`]; vectors run parallel to the
/// approximant list.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow<T> {
    pub x: T,
    pub f: T,
    pub approx: Vec<T>,
    pub abs_err: Vec<T>,
    /// `|ln f - ln approx|`, absent where `f` or the approximant is not
    /// positive.
    pub log_err: Vec<Option<T>>,
}

/// Largest errors over a set of grid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupErrors<T> {
    pub abs: T,
    /// `None` when some point had no log error.
    pub log: Option<T>,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximantSummary<T> {
    pub label: String,
    pub whole: SupErrors<T>,
    pub by_interval: Vec<(Interval<T>, SupErrors<T>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport<T> {
    pub rows: Vec<GridRow<T>>,
    pub summary: Vec<ApproximantSummary<T>>,
}

fn sup_errors<T: Real>(rows: &[GridRow<T>], j: usize, keep: impl Fn(T) -> bool) -> SupErrors<T> {
    let mut abs = T::zero();
    let mut log = Some(T::zero());
    let mut points = 0;
    for row in rows.iter().filter(|r| keep(r.x)) {
        points += 1;
        abs = abs.max(row.abs_err[j]);
        log = match (log, row.log_err[j]) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }
    SupErrors { abs, log, points }
}

/// Tabulates `f` against each approximant, with sup errors over the whole
/// grid and over each of `intervals`.
pub fn grid_report<T: Real>(
    f: &PositiveFunction<T>,
    aps: &[Approximant<T>],
    grid: &Grid<T>,
    intervals: &[Interval<T>],
) -> Result<GridReport<T>> {
    let points = grid.points()?;
    let rows = points
        .par_iter()
        .map(|&x| {
            // ln f = -inf is a zero of f; it is tabulated without log errors.
            let raw = f.log_raw(x);
            let lf = if raw == T::neg_infinity() { raw } else { f.log_at(x)? };
            let fx = lf.exp();
            let mut row = GridRow {
                x,
                f: fx,
                approx: Vec::with_capacity(aps.len()),
                abs_err: Vec::with_capacity(aps.len()),
                log_err: Vec::with_capacity(aps.len()),
            };
            for ap in aps {
                let v = ap.value(x);
                row.approx.push(v);
                row.abs_err.push((fx - v).abs());
                let log_err = ap.log_value(x).filter(|_| lf.is_finite()).map(|l| (lf - l).abs());
                row.log_err.push(log_err);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = aps
        .iter()
        .enumerate()
        .map(|(j, ap)| ApproximantSummary {
            label: ap.label(),
            whole: sup_errors(&rows, j, |_| true),
            by_interval: intervals
                .iter()
                .map(|iv| (*iv, sup_errors(&rows, j, |x| iv.contains(x))))
                .collect(),
        })
        .collect();
    Ok(GridReport { rows, summary })
}

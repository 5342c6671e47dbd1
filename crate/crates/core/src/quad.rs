//! Gauss–Jacobi quadrature: rules whose weights absorb `ω(x) = (1-x)^α (1+x)^β`.
//!
//! Nodes come from the Golub–Welsch construction on the Jacobi matrix of the
//! monic recurrence `p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x)`.
//! Dividing the three-term recurrence of `P_n` by its leading coefficient
//! `k_n` (so `k_n = k_{n-1} · (2n+s-1)(2n+s)(2n+s-2) / A(n)`, `s = α+β`) gives
//!
//! ```text
//! a_k = (β² - α²) / ((2k+s) (2k+s+2)),          a_0 = (β - α) / (s + 2)
//! b_k = 4k (k+α) (k+β) (k+s) / ((2k+s)² (2k+s+1) (2k+s-1)),
//! b_1 = 4 (1+α) (1+β) / ((2+s)² (3+s))
//! ```
//!
//! where `a_0` and `b_1` are the limits with the common `(s)` / `(s+1)`
//! factors cancelled, so they stay finite for `s = 0` and `s = -1`.
//!
//! QL gives eigenvalues and eigenvector first components; each node is then
//! polished by Newton on the orthonormal recurrence and the weight is taken as
//! `μ₀ v₀²` with the eigenvector rebuilt from the same recurrence,
//! i.e. `1 / Σ_k p̂_k(x_i)²`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::mulcore::Interval;
use crate::scalar::Real;
use crate::tridiag::eigen_first_components;

/// Quadrature size used for coefficient extraction up to degree `n_max`.
pub fn default_rule_size(n_max: usize) -> usize {
    (2 * n_max + 16).max(64)
}

/// Gauss rule for `∫_{-1}^{1} g(x) ω(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    params: JacobiParams<T>,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ w_i g(x_i)`; fails on the first node where `g` is not finite.
    pub fn integrate<F: Fn(T) -> T>(&self, g: F) -> Result<T> {
        integrate_weighted(g, self)
    }

    /// `Σ w_i v_i` for values already sampled at the nodes.
    pub fn integrate_values(&self, values: &[T]) -> T {
        debug_assert_eq!(values.len(), self.len());
        self.weights
            .iter()
            .zip(values)
            .fold(T::zero(), |acc, (&w, &v)| acc + w * v)
    }

    /// Nodes and weights pulled back to `[a, b]` for the unit weight.
    /// Only a Legendre rule (`α = β = 0`) can be remapped.
    pub fn remap_unit(&self, iv: &Interval<T>) -> Result<(Vec<T>, Vec<T>)> {
        if !(self.params.alpha().is_zero() && self.params.beta().is_zero()) {
            return Err(Error::Config(format!(
                "unit-weight integration needs a Legendre rule, got alpha = {}, beta = {}",
                self.params.alpha(),
                self.params.beta()
            )));
        }
        let half = (iv.b() - iv.a()) * T::half();
        let mid = (iv.b() + iv.a()) * T::half();
        Ok((
            self.nodes.iter().map(|&t| mid + half * t).collect(),
            self.weights.iter().map(|&w| w * half).collect(),
        ))
    }
}

/// Monic recurrence coefficients `(a_0..a_{m-1}, b_1..b_{m-1})`.
pub fn monic_recurrence<T: Real>(m: usize, params: &JacobiParams<T>) -> (Vec<T>, Vec<T>) {
    let (al, be) = (params.alpha(), params.beta());
    let s = al + be;
    let two = T::two();
    let four = T::lit(4.0);
    let diag = (0..m)
        .map(|k| {
            if k == 0 {
                (be - al) / (s + two)
            } else {
                let kk = T::of_usize(k);
                (be * be - al * al) / ((two * kk + s) * (two * kk + s + two))
            }
        })
        .collect();
    let off = (1..m)
        .map(|k| {
            if k == 1 {
                four * (T::one() + al) * (T::one() + be) / ((two + s) * (two + s) * (T::lit(3.0) + s))
            } else {
                let kk = T::of_usize(k);
                let t = two * kk + s;
                four * kk * (kk + al) * (kk + be) * (kk + s) / (t * t * (t + T::one()) * (t - T::one()))
            }
        })
        .collect();
    (diag, off)
}

// Orthonormal values p̂_0..p̂_{m-1} at x, plus p̂_m and p̂_m'.
fn orthonormal_at<T: Real>(x: T, diag: &[T], sqrt_off: &[T], p0: T) -> (Vec<T>, T, T) {
    let m = diag.len();
    let mut vals = Vec::with_capacity(m);
    let (mut prev, mut cur) = (T::zero(), p0);
    let (mut dprev, mut dcur) = (T::zero(), T::zero());
    for k in 0..m {
        vals.push(cur);
        let back = if k == 0 { T::zero() } else { sqrt_off[k - 1] };
        // sqrt(b_{m}) is not part of the matrix; any positive scale keeps the root
        let fwd = if k + 1 < m { sqrt_off[k] } else { T::one() };
        let next = ((x - diag[k]) * cur - back * prev) / fwd;
        let dnext = (cur + (x - diag[k]) * dcur - back * dprev) / fwd;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    (vals, cur, dcur)
}

/// `m`-point Gauss–Jacobi rule for `params`.
pub fn gauss_jacobi_rule<T: Real>(m: usize, params: &JacobiParams<T>) -> Result<QuadratureRule<T>> {
    if m == 0 {
        return Err(Error::Config("quadrature rule needs at least one node".into()));
    }
    let mu0 = params.total_mass();
    let (diag, off) = monic_recurrence(m, params);
    let sqrt_off: Vec<T> = off.iter().map(|b| b.sqrt()).collect();
    let (eig, first) = eigen_first_components(&diag, &sqrt_off)?;

    let p0 = mu0.sqrt().recip();
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (i, (&x0, &v0)) in eig.iter().zip(&first).enumerate() {
        let mut x = x0;
        // Newton polish; the QL value is already close, so reject anything that
        // moves farther than a few rounding units of the spectrum width
        for _ in 0..3 {
            let (_, pm, dpm) = orthonormal_at(x, &diag, &sqrt_off, p0);
            if dpm.is_zero() {
                break;
            }
            let step = pm / dpm;
            if !(step.abs() < T::lit(1e-6)) {
                break;
            }
            x = x - step;
            if step.abs() <= T::epsilon() * (T::one() + x.abs()) {
                break;
            }
        }
        let (vals, _, _) = orthonormal_at(x, &diag, &sqrt_off, p0);
        let norm2 = vals.iter().fold(T::zero(), |acc, &v| acc + v * v);
        let w = if norm2.is_finite() && norm2 > T::zero() {
            norm2.recip()
        } else {
            mu0 * v0 * v0
        };
        if !(x > -T::one() && x < T::one()) || !(w > T::zero()) {
            return Err(Error::NoConvergence {
                index: i,
                sweeps: 0,
                size: m,
                residual: x.as_f64(),
            });
        }
        nodes.push(x);
        weights.push(w);
    }
    if params.is_symmetric() && m % 2 == 1 {
        nodes[m / 2] = T::zero();
    }
    Ok(QuadratureRule {
        params: *params,
        nodes,
        weights,
    })
}

/// `m`-point Gauss–Legendre rule.
pub fn gauss_legendre_rule<T: Real>(m: usize) -> Result<QuadratureRule<T>> {
    gauss_jacobi_rule(m, &JacobiParams::legendre())
}

/// `Σ w_i g(x_i)`, an estimate of `∫ g ω dx`.
pub fn integrate_weighted<T: Real, F: Fn(T) -> T>(g: F, rule: &QuadratureRule<T>) -> Result<T> {
    let mut acc = T::zero();
    for (x, w) in rule.iter() {
        let v = g(x);
        if !v.is_finite() {
            return Err(Error::Evaluation {
                label: "integrand".into(),
                x: x.as_f64(),
                value: v.as_f64(),
            });
        }
        acc = acc + w * v;
    }
    Ok(acc)
}

fn exact_rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite parameter")
}

/// Closed-form moment `∫_{-1}^{1} x^k ω(x) dx`.
///
/// Expanding `x^k = ((1+x) - 1)^k` gives
/// `∫ (1+x)^j ω = μ₀ 2^j (β+1)_j / (α+β+2)_j`, so the moment is `μ₀` times an
/// alternating binomial sum. The sum cancels heavily for large `k`, so it is
/// accumulated in exact rational arithmetic from the exact binary values of
/// `α` and `β`; only `μ₀` goes through log-Gamma.
pub fn moment<T: Real>(k: usize, params: &JacobiParams<T>) -> T {
    let beta1 = exact_rational(params.beta().as_f64()) + BigRational::one();
    let s2 = exact_rational(params.alpha().as_f64()) + exact_rational(params.beta().as_f64())
        + BigRational::from_integer(BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for j in 0..=k {
        if (k - j).is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        if j < k {
            let jr = BigRational::from_integer(BigInt::from(j));
            term = term
                * BigRational::new(BigInt::from(k - j), BigInt::from(j + 1))
                * &two
                * (&beta1 + &jr)
                / (&s2 + &jr);
        }
    }
    let ratio = sum.to_f64().unwrap_or(f64::NAN);
    params.total_mass() * T::lit(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{jacobi_eval, leading_coeff};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn params(a: f64, b: f64) -> JacobiParams<f64> {
        JacobiParams::new(a, b).unwrap()
    }

    #[test]
    fn one_point_legendre() {
        let r = gauss_legendre_rule::<f64>(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_relative_eq!(r.weights()[0], 2.0, max_relative = 1e-15);
    }

    #[test]
    fn two_point_legendre() {
        let r = gauss_legendre_rule::<f64>(2).unwrap();
        let s = 1.0 / 3.0f64.sqrt();
        assert_relative_eq!(r.nodes()[0], -s, max_relative = 1e-15);
        assert_relative_eq!(r.nodes()[1], s, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, max_relative = 1e-14);
        assert_relative_eq!(r.weights()[1], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn chebyshev_gauss_closed_form() {
        for m in [4usize, 7, 16, 33] {
            let r = gauss_jacobi_rule(m, &params(-0.5, -0.5)).unwrap();
            for (i, (x, w)) in r.iter().enumerate() {
                // ascending order: k = m - i
                let k = (m - i) as f64;
                let expect = ((2.0 * k - 1.0) * PI / (2.0 * m as f64)).cos();
                assert!((x - expect).abs() < 1e-15, "m={m} i={i}");
                assert_relative_eq!(w, PI / m as f64, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(matches!(gauss_legendre_rule::<f64>(0), Err(Error::Config(_))));
    }

    #[test]
    fn integrate_examples() {
        for m in 1..6 {
            let r = gauss_legendre_rule::<f64>(m).unwrap();
            assert_relative_eq!(r.integrate(|_| 1.0).unwrap(), 2.0, max_relative = 1e-14);
        }
        let r = gauss_legendre_rule::<f64>(2).unwrap();
        assert_relative_eq!(r.integrate(|x| x * x).unwrap(), 2.0 / 3.0, max_relative = 1e-14);
        let leg = JacobiParams::legendre();
        let r = gauss_legendre_rule::<f64>(4).unwrap();
        let v = r.integrate(|x| jacobi_eval(3, &leg, x).powi(2)).unwrap();
        assert_relative_eq!(v, 2.0 / 7.0, max_relative = 1e-14);
    }

    #[test]
    fn integrate_reports_bad_node() {
        let r = gauss_legendre_rule::<f64>(3).unwrap();
        let err = r.integrate(|x| 1.0 / x).unwrap_err();
        assert!(matches!(err, Error::Evaluation { x, .. } if x == 0.0));
    }

    #[test]
    fn moment_examples() {
        let leg = params(0.0, 0.0);
        assert_relative_eq!(moment(0, &leg), 2.0, max_relative = 1e-15);
        assert_eq!(moment(1, &leg), 0.0);
        assert_relative_eq!(moment(2, &params(-0.5, -0.5)), PI / 2.0, max_relative = 1e-14);
        for k in 0..40 {
            let expect = if k % 2 == 0 { 2.0 / (k + 1) as f64 } else { 0.0 };
            assert!((moment(k, &leg) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn moment_recurrence_cross_check() {
        // integration by parts of d/dx[(1-x²) ω x^k] gives
        // (α+β+2+k) M_{k+1} = (β-α) M_k + k M_{k-1}
        for &(a, b) in &[(1.0, 2.0), (-0.3, 0.7), (0.5, 0.5)] {
            let p = params(a, b);
            for k in 1..30 {
                let lhs = (a + b + 2.0 + k as f64) * moment(k + 1, &p);
                let rhs = (b - a) * moment(k, &p) + k as f64 * moment(k - 1, &p);
                assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs.abs()), "k={k}");
            }
        }
    }

    #[test]
    fn monic_recurrence_matches_jacobi() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (1.0, 2.0), (-0.3, 0.7), (0.4, -0.4)] {
            let p = params(a, b);
            let (diag, off) = monic_recurrence(12, &p);
            for &x in &[-0.8, -0.1, 0.35, 0.9] {
                let (mut prev, mut cur) = (0.0, 1.0);
                for n in 0..12 {
                    let monic = jacobi_eval(n, &p, x) / leading_coeff(n, &p);
                    assert!((cur - monic).abs() <= 1e-12 * (1.0 + monic.abs()), "n={n}");
                    let back = if n == 0 { 0.0 } else { off[n - 1] };
                    let next = (x - diag[n]) * cur - back * prev;
                    prev = cur;
                    cur = next;
                }
            }
        }
    }

    #[test]
    fn exactness_on_test_grid() {
        let grid = [(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5), (1.0, 2.0), (-0.3, 0.7)];
        for &(a, b) in &grid {
            let p = params(a, b);
            let moments: Vec<f64> = (0..48).map(|k| moment(k, &p)).collect();
            for m in 1..=24 {
                let r = gauss_jacobi_rule(m, &p).unwrap();
                for (k, &mk) in moments.iter().enumerate().take(2 * m) {
                    let q = r.integrate(|x| x.powi(k as i32)).unwrap();
                    assert!((q - mk).abs() <= 1e-12 * (1.0 + mk.abs()), "a={a} b={b} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn rule_invariants() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (1.0, 2.0), (-0.3, 0.7), (-0.9, 3.5)] {
            let p = params(a, b);
            for m in [1usize, 2, 5, 24, 64, 150] {
                let r = gauss_jacobi_rule(m, &p).unwrap();
                assert_eq!(r.len(), m);
                assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
                assert!(r.nodes().iter().all(|&x| x > -1.0 && x < 1.0));
                assert!(r.weights().iter().all(|&w| w > 0.0));
                let total: f64 = r.weights().iter().sum();
                assert_relative_eq!(total, p.total_mass(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn symmetric_rules_are_symmetric() {
        for &a in &[0.0, -0.5, 0.5, 1.5] {
            let p = params(a, a);
            for m in [3usize, 8, 21, 64] {
                let r = gauss_jacobi_rule(m, &p).unwrap();
                for i in 0..m {
                    let j = m - 1 - i;
                    assert!((r.nodes()[i] + r.nodes()[j]).abs() <= 1e-13);
                    assert!((r.weights()[i] - r.weights()[j]).abs() <= 1e-13);
                }
            }
        }
    }

    #[test]
    fn remap_requires_legendre() {
        let iv = Interval::new(0.0f64, 2.0).unwrap();
        let r = gauss_jacobi_rule(4, &params(0.5, 0.5)).unwrap();
        assert!(matches!(r.remap_unit(&iv), Err(Error::Config(_))));
        let r = gauss_legendre_rule::<f64>(4).unwrap();
        let (x, w) = r.remap_unit(&iv).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x).sum();
        assert_relative_eq!(s, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn single_precision_rule() {
        let r = gauss_jacobi_rule::<f32>(8, &JacobiParams::legendre()).unwrap();
        let total: f32 = r.weights().iter().sum();
        assert!((total - 2.0).abs() < 1e-5);
    }
}

//! Classical Jacobi polynomials `P_n^{(α,β)}`.
//!
//! Evaluation always runs the three-term recurrence
//!
//! ```text
//! A(n) P_n = B(x, n) P_{n-1} - C(n) P_{n-2}
//! A(n)    = 2n (n+α+β) (2n+α+β-2)
//! B(x, n) = (2n+α+β-1) [ (2n+α+β)(2n+α+β-2) x + α² - β² ]
//! C(n)    = 2 (n+α-1)(n+β-1)(2n+α+β)
//! ```
//!
//! seeded with `P_0 = 1` and the closed form `P_1 = (α+1) + (α+β+2)(x-1)/2`.
//! `A(1)` vanishes whenever `α+β ∈ {0, -1}`, so the `n = 1` step is never
//! taken through the recurrence. For `n ≥ 2`, `A(n) > 0` because `α+β > -2`.
//!
//! The explicit monomial expansion is kept for small degrees only; it is
//! ill-conditioned and serves as a cross-check.

use crate::error::{Error, Result};
use crate::poly::MonomialPoly;
use crate::scalar::{sign_pow, Real};
use crate::special::{choose, factorial, ln_binomial_signed, ln_gamma, pochhammer};

/// Largest degree accepted by [`jacobi_coeffs`].
pub const MAX_MONOMIAL_DEGREE: usize = 12;

/// The pair `(α, β)` defining the weight `ω(x) = (1-x)^α (1+x)^β` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> JacobiParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let valid = |v: T| v.is_finite() && v > -T::one();
        if valid(alpha) && valid(beta) {
            Ok(Self { alpha, beta })
        } else {
            Err(Error::InvalidParams {
                alpha: alpha.as_f64(),
                beta: beta.as_f64(),
            })
        }
    }

    /// Legendre weight, `α = β = 0`.
    pub fn legendre() -> Self {
        Self {
            alpha: T::zero(),
            beta: T::zero(),
        }
    }

    /// Chebyshev first-kind weight, `α = β = -1/2`.
    pub fn chebyshev_first() -> Self {
        Self {
            alpha: -T::half(),
            beta: -T::half(),
        }
    }

    /// Chebyshev second-kind weight, `α = β = 1/2`.
    pub fn chebyshev_second() -> Self {
        Self {
            alpha: T::half(),
            beta: T::half(),
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `α + β`.
    pub fn sum(&self) -> T {
        self.alpha + self.beta
    }

    /// `λ = α - β`.
    pub fn lambda(&self) -> T {
        self.alpha - self.beta
    }

    /// `(β, α)`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// `(α + k, β + k)`, the family of the k-th derivative.
    pub fn shifted(&self, k: usize) -> Self {
        let k = T::of_usize(k);
        Self {
            alpha: self.alpha + k,
            beta: self.beta + k,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// `ω(x) = (1-x)^α (1+x)^β`.
    pub fn weight(&self, x: T) -> T {
        (T::one() - x).powf(self.alpha) * (T::one() + x).powf(self.beta)
    }

    /// `μ₀ = ∫ ω = 2^{α+β+1} B(α+1, β+1)`.
    pub fn total_mass(&self) -> T {
        self.ln_total_mass().exp()
    }

    pub fn ln_total_mass(&self) -> T {
        let (a, b) = (self.alpha, self.beta);
        (a + b + T::one()) * T::LN_2() + ln_gamma(a + T::one()) + ln_gamma(b + T::one())
            - ln_gamma(a + b + T::two())
    }
}

/// Recurrence coefficients `(A, B, C)` for degree `n ≥ 2`.
pub fn recurrence_coeffs<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> (T, T, T) {
    let (a, b) = (params.alpha, params.beta);
    let nn = T::of_usize(n);
    let two = T::two();
    let s = a + b;
    let big_a = two * nn * (nn + s) * (two * nn + s - two);
    let big_b = (two * nn + s - T::one()) * ((two * nn + s) * (two * nn + s - two) * x + a * a - b * b);
    let big_c = two * (nn + a - T::one()) * (nn + b - T::one()) * (two * nn + s);
    (big_a, big_b, big_c)
}

// (α+1) + (α+β+2)(x-1)/2, regrouped so that P_1^{(0,0)}(x) = x exactly.
fn p1<T: Real>(params: &JacobiParams<T>, x: T) -> T {
    T::half() * (params.lambda() + (params.sum() + T::two()) * x)
}

/// `P_n^{(α,β)}(x)` by forward recurrence. Valid for any real `x`.
pub fn jacobi_eval<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> T {
    match n {
        0 => T::one(),
        1 => p1(params, x),
        _ => {
            let (mut prev, mut cur) = (T::one(), p1(params, x));
            for k in 2..=n {
                let (a, b, c) = recurrence_coeffs(k, params, x);
                let next = (b * cur - c * prev) / a;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `[P_0(x), ..., P_{n_max}(x)]`.
pub fn jacobi_eval_all<T: Real>(n_max: usize, params: &JacobiParams<T>, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(T::one());
    if n_max == 0 {
        return out;
    }
    out.push(p1(params, x));
    for k in 2..=n_max {
        let (a, b, c) = recurrence_coeffs(k, params, x);
        let next = (b * out[k - 1] - c * out[k - 2]) / a;
        out.push(next);
    }
    out
}

/// Monomial coefficients of `P_n^{(α,β)}` from the explicit `(x-1)/2` expansion.
pub fn jacobi_coeffs<T: Real>(n: usize, params: &JacobiParams<T>) -> Result<MonomialPoly<T>> {
    if n > MAX_MONOMIAL_DEGREE {
        return Err(Error::Range {
            what: "monomial expansion degree",
            value: n,
            limit: MAX_MONOMIAL_DEGREE,
        });
    }
    let a1 = params.alpha + T::one();
    let top = params.sum() + T::of_usize(n + 1);
    let nfact = factorial::<T>(n);
    // c_k = C(n,k) (α+β+n+1)_k (α+1)_n / (α+1)_k / n!, with the Pochhammer ratio
    // written as (α+k+1)_{n-k}.
    let in_y: Vec<T> = (0..=n)
        .map(|k| {
            choose::<T>(n, k) * pochhammer(top, k) * pochhammer(a1 + T::of_usize(k), n - k) / nfact
        })
        .collect();
    let y = MonomialPoly::new(vec![-T::half(), T::half()]);
    Ok(MonomialPoly::new(in_y).compose(&y))
}

/// `h_n = ∫ P_n² ω dx`, computed from log-Gamma values.
pub fn jacobi_norm2<T: Real>(n: usize, params: &JacobiParams<T>) -> T {
    ln_jacobi_norm2(n, params).exp()
}

/// `ln h_n`.
pub fn ln_jacobi_norm2<T: Real>(n: usize, params: &JacobiParams<T>) -> T {
    if n == 0 {
        // the general formula has Γ(α+β+1)·(α+β+1) in the denominator
        return params.ln_total_mass();
    }
    let (a, b) = (params.alpha, params.beta);
    let s = a + b;
    let nn = T::of_usize(n);
    (s + T::one()) * T::LN_2() - (T::two() * nn + s + T::one()).ln()
        + ln_gamma(nn + a + T::one())
        + ln_gamma(nn + b + T::one())
        - ln_gamma(nn + T::one())
        - ln_gamma(nn + s + T::one())
}

/// `d/dx P_n^{(α,β)}(x) = ½ (n+α+β+1) P_{n-1}^{(α+1,β+1)}(x)`; zero for `n = 0`.
pub fn jacobi_deriv<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> T {
    if n == 0 {
        return T::zero();
    }
    T::half() * (T::of_usize(n) + params.sum() + T::one()) * jacobi_eval(n - 1, &params.shifted(1), x)
}

/// Second derivative through the derivative identity applied twice.
pub fn jacobi_deriv2<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> T {
    if n < 2 {
        return T::zero();
    }
    let nn = T::of_usize(n);
    let s = params.sum();
    T::half() * (nn + s + T::one()) * T::half() * (nn + s + T::two())
        * jacobi_eval(n - 2, &params.shifted(2), x)
}

/// `P_n^{(α,β)}(x)` through the reflection `(-1)^n P_n^{(β,α)}(-x)`.
pub fn jacobi_reflect<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> T {
    sign_pow::<T>(n) * jacobi_eval(n, &params.swapped(), -x)
}

/// `P_n^{(α,β)}(1) = binom(n+α, n)`, from the Gamma formula.
pub fn jacobi_at_one<T: Real>(n: usize, params: &JacobiParams<T>) -> T {
    let nn = T::of_usize(n);
    let (l, s) = ln_binomial_signed(nn + params.alpha, nn);
    s * l.exp()
}

/// Leading monomial coefficient `k_n = 2^{-n} binom(2n+α+β, n)`.
///
/// Taken as the product `Π_{k=1}^{n} (n+α+β+k) / (2k)`, which stays finite
/// at `α+β = -1` where the Gamma form is `0/0`.
pub fn leading_coeff<T: Real>(n: usize, params: &JacobiParams<T>) -> T {
    let base = T::of_usize(n) + params.sum();
    (1..=n).fold(T::one(), |acc, k| {
        let kk = T::of_usize(k);
        acc * (base + kk) / (T::two() * kk)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(a: f64, b: f64) -> JacobiParams<f64> {
        JacobiParams::new(a, b).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(JacobiParams::new(-1.0f64, 0.0).is_err());
        assert!(JacobiParams::new(0.0f64, f64::NAN).is_err());
        assert!(JacobiParams::new(-0.999f64, 3.0).is_ok());
    }

    #[test]
    fn eval_examples() {
        let leg = JacobiParams::<f64>::legendre();
        for &x in &[-0.7, 0.0, 0.3, 2.5] {
            assert_eq!(jacobi_eval(1, &leg, x), x);
        }
        assert_relative_eq!(jacobi_eval(3, &params(1.0, 0.0), 1.0), 4.0, max_relative = 1e-15);
        assert_relative_eq!(jacobi_eval(2, &leg, 0.5), -0.125, max_relative = 1e-15);
    }

    #[test]
    fn coeffs_examples() {
        let leg = JacobiParams::<f64>::legendre();
        assert_eq!(jacobi_coeffs(0, &leg).unwrap().coeffs(), &[1.0]);
        let p2 = jacobi_coeffs(2, &leg).unwrap();
        assert_relative_eq!(p2.coeff(0), -0.5, max_relative = 1e-15);
        assert!(p2.coeff(1).abs() < 1e-15);
        assert_relative_eq!(p2.coeff(2), 1.5, max_relative = 1e-15);
        let p3 = jacobi_coeffs(3, &leg).unwrap();
        assert_relative_eq!(p3.leading(), 2.5, max_relative = 1e-14);
        assert!(matches!(jacobi_coeffs(13, &leg), Err(Error::Range { .. })));
    }

    #[test]
    fn leading_coefficient_matches_expansion() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (1.0, 2.0), (-0.3, 0.7)] {
            let p = params(a, b);
            for n in 0..=MAX_MONOMIAL_DEGREE {
                let c = jacobi_coeffs(n, &p).unwrap();
                assert_eq!(c.degree(), n);
                assert_relative_eq!(c.leading(), leading_coeff(n, &p), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn norm_examples() {
        let leg = JacobiParams::<f64>::legendre();
        assert_relative_eq!(jacobi_norm2(0, &leg), 2.0, max_relative = 1e-14);
        for n in 0..30 {
            assert_relative_eq!(jacobi_norm2(n, &leg), 2.0 / (2 * n + 1) as f64, max_relative = 1e-13);
        }
        let cheb = JacobiParams::<f64>::chebyshev_first();
        assert_relative_eq!(jacobi_norm2(0, &cheb), std::f64::consts::PI, max_relative = 1e-14);
        // P_1^{(-1/2,-1/2)} = x/2, so h_1 = π/8; rescaled to T_1 = x it is π/2
        assert_relative_eq!(jacobi_norm2(1, &cheb), std::f64::consts::PI / 8.0, max_relative = 1e-14);
        assert_relative_eq!(4.0 * jacobi_norm2(1, &cheb), std::f64::consts::FRAC_PI_2, max_relative = 1e-14);
    }

    #[test]
    fn derivative_examples() {
        let leg = JacobiParams::<f64>::legendre();
        assert_eq!(jacobi_deriv(1, &leg, 0.3), 1.0);
        assert_relative_eq!(jacobi_deriv(2, &leg, 0.5), 1.5, max_relative = 1e-15);
    }

    #[test]
    fn reflection_examples() {
        let leg = JacobiParams::<f64>::legendre();
        for n in (0..10).step_by(2) {
            assert_relative_eq!(jacobi_eval(n, &leg, -0.37), jacobi_eval(n, &leg, 0.37), max_relative = 1e-14);
        }
        assert_relative_eq!(jacobi_eval(3, &leg, -0.4), -jacobi_eval(3, &leg, 0.4), max_relative = 1e-14);
        let p = params(1.0, 0.0);
        assert_relative_eq!(jacobi_reflect(2, &p, 0.3), jacobi_eval(2, &p, 0.3), max_relative = 1e-13);
    }

    #[test]
    fn degenerate_first_step() {
        // α + β = -1 and α + β = 0 both make A(1) vanish
        let p = params(-0.5, -0.5);
        assert_relative_eq!(jacobi_eval(1, &p, 0.3), 0.5 * 0.3, max_relative = 1e-15);
        let p = params(0.4, -0.4);
        let expect = jacobi_coeffs(3, &p).unwrap().eval(0.2);
        assert_relative_eq!(jacobi_eval(3, &p, 0.2), expect, max_relative = 1e-13);
    }

    // Exact evaluation of the (x-1)/2 expansion at x = num/den; f64 loses
    // ~7 digits to cancellation near x = -1 at n = 10.
    fn expansion_exact(n: usize, a: f64, b: f64, num: i64, den: i64) -> f64 {
        use num_rational::BigRational;
        use num_traits::{One, ToPrimitive};
        let q = |v: f64| BigRational::from_float(v).unwrap();
        let x = BigRational::new(num.into(), den.into());
        let poch = |base: &BigRational, k: usize| {
            (0..k).fold(BigRational::one(), |acc, i| acc * (base + q(i as f64)))
        };
        // grid parameters are multiples of 1/10
        let tenth = |v: f64| BigRational::new(((v * 10.0).round() as i64).into(), 10.into());
        let (a, b) = (tenth(a), tenth(b));
        let y = (x - BigRational::one()) / q(2.0);
        let top = &a + &b + q((n + 1) as f64);
        let nfact = poch(&BigRational::one(), n);
        let mut sum = q(0.0);
        let mut ypow = BigRational::one();
        for k in 0..=n {
            let c = q(choose::<f64>(n, k)) * poch(&top, k) * poch(&(&a + q((k + 1) as f64)), n - k);
            sum += c * &ypow / &nfact;
            ypow *= &y;
        }
        sum.to_f64().unwrap()
    }

    #[test]
    fn recurrence_agrees_with_expansion() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5), (1.0, 2.0), (-0.3, 0.7)] {
            let p = params(a, b);
            for n in 0..=10 {
                for i in 0..=100 {
                    let x = (i - 50) as f64 / 50.0;
                    let direct = expansion_exact(n, a, b, i - 50, 50);
                    let rec = jacobi_eval(n, &p, x);
                    assert!((rec - direct).abs() <= 1e-10 * (1.0 + direct.abs()), "n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn monomial_coeffs_evaluate_close_to_expansion() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (1.0, 2.0)] {
            let p = params(a, b);
            for n in 0..=8 {
                let c = jacobi_coeffs(n, &p).unwrap();
                for &(num, den) in &[(-9, 10), (-1, 5), (7, 20), (1, 1)] {
                    let x = num as f64 / den as f64;
                    let direct = expansion_exact(n, a, b, num, den);
                    assert!((c.eval(x) - direct).abs() <= 1e-8 * (1.0 + direct.abs()), "n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn eval_all_matches_single() {
        let p = params(0.25, -0.6);
        let all = jacobi_eval_all(20, &p, 0.33);
        for (n, v) in all.iter().enumerate() {
            assert_eq!(*v, jacobi_eval(n, &p, 0.33));
        }
    }

    #[test]
    fn endpoint_identity() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5), (1.0, 2.0), (-0.3, 0.7)] {
            let p = params(a, b);
            for n in 0..=20 {
                assert_relative_eq!(jacobi_eval(n, &p, 1.0), jacobi_at_one(n, &p), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn classical_ode_residual() {
        for &(a, b) in &[(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5), (1.0, 2.0), (-0.3, 0.7)] {
            let p = params(a, b);
            for n in 0..=15 {
                let nf = n as f64;
                for i in 1..100 {
                    let x = -1.0 + 0.02 * i as f64;
                    let v = jacobi_eval(n, &p, x);
                    let r = (1.0 - x * x) * jacobi_deriv2(n, &p, x)
                        + (b - a - (a + b + 2.0) * x) * jacobi_deriv(n, &p, x)
                        + nf * (nf + a + b + 1.0) * v;
                    assert!(r.abs() <= 1e-7 * (1.0 + v.abs() * nf * nf), "n={n} x={x} r={r}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn derivative_matches_finite_difference(n in 1usize..=10, x in -0.95f64..0.95, a in -0.9f64..3.0, b in -0.9f64..3.0) {
            let p = params(a, b);
            let h = 1e-5;
            let fd = (jacobi_eval(n, &p, x + h) - jacobi_eval(n, &p, x - h)) / (2.0 * h);
            let d = jacobi_deriv(n, &p, x);
            prop_assert!((fd - d).abs() <= 1e-6 * (1.0 + d.abs()));
        }

        #[test]
        fn reflection_agrees(n in 0usize..20, x in -1.0f64..1.0, a in -0.9f64..3.0, b in -0.9f64..3.0) {
            let p = params(a, b);
            let direct = jacobi_eval(n, &p, x);
            prop_assert!((jacobi_reflect(n, &p, x) - direct).abs() <= 1e-11 * (1.0 + direct.abs()));
        }
    }
}

//! Multiplicative Jacobi polynomials `P̃_n = exp(P_n)` and the classical
//! special families built on them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_coeffs, jacobi_eval, recurrence_coeffs, JacobiParams};
use crate::mulcore::{ExpReal, Interval, PositiveFunction};
use crate::poly::MonomialPoly;
use crate::scalar::{sign_pow, Real};
use crate::special::{factorial, ln_gamma, ln_gamma_signed, pochhammer};

/// Which classical family a [`MulJacobiPoly`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Jacobi,
    Legendre,
    Chebyshev1,
    Chebyshev2,
    Gegenbauer,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Jacobi => "jacobi",
            Family::Legendre => "legendre",
            Family::Chebyshev1 => "chebyshev1",
            Family::Chebyshev2 => "chebyshev2",
            Family::Gegenbauer => "gegenbauer",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi" => Ok(Family::Jacobi),
            "legendre" => Ok(Family::Legendre),
            "chebyshev1" => Ok(Family::Chebyshev1),
            "chebyshev2" => Ok(Family::Chebyshev2),
            "gegenbauer" => Ok(Family::Gegenbauer),
            other => Err(Error::Config(format!("unknown polynomial family `{other}`"))),
        }
    }
}

/// `P̃_n = exp(scale · P_n^{(α,β)})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MulJacobiPoly<T> {
    degree: usize,
    params: JacobiParams<T>,
    family: Family,
    scale: T,
}

/// `4^n / binom(2n, n)`.
pub fn chebyshev_first_scale<T: Real>(n: usize) -> T {
    let nn = T::of_usize(n);
    (T::two() * nn * T::LN_2() - ln_gamma(T::two() * nn + T::one()) + T::two() * ln_gamma(nn + T::one()))
        .exp()
}

/// `4^n / binom(2n+1, n+1)`.
pub fn chebyshev_second_scale<T: Real>(n: usize) -> T {
    let nn = T::of_usize(n);
    (T::two() * nn * T::LN_2() - ln_gamma(T::two() * nn + T::two())
        + ln_gamma(nn + T::two())
        + ln_gamma(nn + T::one()))
    .exp()
}

/// `binom(n+2α, α) / binom(2α, α) = Γ(n+2α+1) Γ(α+1) / (Γ(n+α+1) Γ(2α+1))`.
pub fn gegenbauer_scale<T: Real>(n: usize, alpha: T) -> Result<T> {
    let two_a1 = T::two() * alpha + T::one();
    if two_a1 == T::zero() {
        return Err(Error::Domain("the Gegenbauer scale is undefined at α = -1/2".into()));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let nn = T::of_usize(n);
    let (l1, s1) = ln_gamma_signed(nn + two_a1);
    let (l2, s2) = ln_gamma_signed(two_a1);
    Ok(s1 * s2 * (l1 + ln_gamma(alpha + T::one()) - ln_gamma(nn + alpha + T::one()) - l2).exp())
}

impl<T: Real> MulJacobiPoly<T> {
    pub fn jacobi(degree: usize, params: JacobiParams<T>) -> Self {
        Self {
            degree,
            params,
            family: Family::Jacobi,
            scale: T::one(),
        }
    }

    pub fn legendre(degree: usize) -> Self {
        Self {
            family: Family::Legendre,
            ..Self::jacobi(degree, JacobiParams::legendre())
        }
    }

    /// `T̃_n`.
    pub fn chebyshev_first(degree: usize) -> Self {
        Self {
            degree,
            params: JacobiParams::chebyshev_first(),
            family: Family::Chebyshev1,
            scale: chebyshev_first_scale(degree),
        }
    }

    /// `Ũ_n`.
    pub fn chebyshev_second(degree: usize) -> Self {
        Self {
            degree,
            params: JacobiParams::chebyshev_second(),
            family: Family::Chebyshev2,
            scale: chebyshev_second_scale(degree),
        }
    }

    /// Gegenbauer polynomial of index `α + 1/2`, built on `P_n^{(α,α)}`.
    pub fn gegenbauer(degree: usize, alpha: T) -> Result<Self> {
        Ok(Self {
            degree,
            params: JacobiParams::new(alpha, alpha)?,
            family: Family::Gegenbauer,
            scale: gegenbauer_scale(degree, alpha)?,
        })
    }

    /// Builds a family member; `params` is only read for `Jacobi` and
    /// `Gegenbauer` (which uses `params.alpha()`).
    pub fn of_family(family: Family, degree: usize, params: JacobiParams<T>) -> Result<Self> {
        match family {
            Family::Jacobi => Ok(Self::jacobi(degree, params)),
            Family::Legendre => Ok(Self::legendre(degree)),
            Family::Chebyshev1 => Ok(Self::chebyshev_first(degree)),
            Family::Chebyshev2 => Ok(Self::chebyshev_second(degree)),
            Family::Gegenbauer => Self::gegenbauer(degree, params.alpha()),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn log_at(&self, x: T) -> T {
        mul_jacobi_log(self, x)
    }

    pub fn at(&self, x: T) -> ExpReal<T> {
        ExpReal::from_ln(mul_jacobi_log(self, x))
    }

    /// Monomial coefficients of the exponent polynomial `ln P̃_n`.
    pub fn exponent_coeffs(&self) -> Result<MonomialPoly<T>> {
        Ok(jacobi_coeffs(self.degree, &self.params)?.scale(self.scale))
    }

    /// `(ln P̃_n)^{(k)}(x) = scale · (n+α+β+1)_k / 2^k · P_{n-k}^{(α+k,β+k)}(x)`.
    pub fn log_derivative(&self, x: T, k: usize) -> T {
        if k > self.degree {
            return T::zero();
        }
        let n = self.degree;
        let factor = pochhammer(T::of_usize(n) + self.params.sum() + T::one(), k) / T::two().powi(k as i32);
        self.scale * factor * jacobi_eval(n - k, &self.params.shifted(k), x)
    }

    /// `P̃_n` as a [`PositiveFunction`] on `[-1, 1]` with exact log-derivatives.
    pub fn to_positive_function(&self) -> PositiveFunction<T> {
        let (p, q) = (*self, *self);
        PositiveFunction::from_log(
            format!("{}[{}]", self.family.name(), self.degree),
            Interval::reference(),
            move |x| p.log_at(x),
        )
        .with_log_derivative(move |x, k| Some(q.log_derivative(x, k)))
    }
}

/// `T_n(x)` from `T_0 = 1`, `T_1 = x`, `T_{n+1} = 2x T_n - T_{n-1}`.
pub fn chebyshev_t<T: Real>(n: usize, x: T) -> T {
    chebyshev_run(n, x, x)
}

/// `U_n(x)` from `U_0 = 1`, `U_1 = 2x`, `U_{n+1} = 2x U_n - U_{n-1}`.
pub fn chebyshev_u<T: Real>(n: usize, x: T) -> T {
    chebyshev_run(n, x, T::two() * x)
}

fn chebyshev_run<T: Real>(n: usize, x: T, first: T) -> T {
    if n == 0 {
        return T::one();
    }
    let (mut prev, mut cur) = (T::one(), first);
    for _ in 1..n {
        let next = T::two() * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `ln P̃_n(x)`. Chebyshev families run their integer recurrence; the rest
/// scale the Jacobi recurrence.
pub fn mul_jacobi_log<T: Real>(p: &MulJacobiPoly<T>, x: T) -> T {
    match p.family {
        Family::Chebyshev1 => chebyshev_t(p.degree, x),
        Family::Chebyshev2 => chebyshev_u(p.degree, x),
        _ => scaled_jacobi_log(p, x),
    }
}

/// `scale · P_n^{(α,β)}(x)` for every family.
pub fn scaled_jacobi_log<T: Real>(p: &MulJacobiPoly<T>, x: T) -> T {
    p.scale * jacobi_eval(p.degree, &p.params, x)
}

/// `d*/dx P̃_n = (P̃_{n-1}^{(α+1,β+1)})^{½ (n+α+β+1)}`, scaled for the family;
/// `1` for `n = 0`.
pub fn mul_star_derivative<T: Real>(p: &MulJacobiPoly<T>, x: T) -> ExpReal<T> {
    ExpReal::from_ln(p.log_derivative(x, 1))
}

/// `(1-x²) L'' + (β-α-(α+β+2)x) L' + n(n+α+β+1) L` with `L = ln P̃_n`, the
/// log form of the multiplicative Jacobi equation.
pub fn mul_jacobi_ode_residual<T: Real>(p: &MulJacobiPoly<T>, x: T) -> T {
    let (a, b) = (p.params.alpha(), p.params.beta());
    let n = T::of_usize(p.degree);
    let l = p.log_at(x);
    let d1 = p.log_derivative(x, 1);
    let d2 = p.log_derivative(x, 2);
    (T::one() - x * x) * d2 + (b - a - (a + b + T::two()) * x) * d1 + n * (n + p.params.sum() + T::one()) * l
}

/// Largest degree accepted by [`mul_rodrigues_log`].
pub const MAX_RODRIGUES_DEGREE: usize = 6;

/// `ln P̃_n(x)` through the Rodrigues formula, differentiating
/// `(1-x)^{α+n} (1+x)^{β+n}` term by term. Independent of the recurrence.
pub fn mul_rodrigues_log<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> Result<T> {
    if n > MAX_RODRIGUES_DEGREE {
        return Err(Error::Range {
            what: "Rodrigues degree",
            value: n,
            limit: MAX_RODRIGUES_DEGREE,
        });
    }
    if x.abs() >= T::one() {
        return Err(Error::ExcludedPoint {
            x: x.as_f64(),
            reason: "the Jacobi weight vanishes or is singular at ±1",
        });
    }
    let (a, b) = (params.alpha(), params.beta());
    // key (i, j): coefficient of (1-x)^{α+i} (1+x)^{β+j}
    let mut terms: BTreeMap<(usize, usize), T> = BTreeMap::new();
    terms.insert((n, n), T::one());
    for _ in 0..n {
        let mut next: BTreeMap<(usize, usize), T> = BTreeMap::new();
        for (&(i, j), &c) in &terms {
            let pa = a + T::of_usize(i);
            let pb = b + T::of_usize(j);
            // i + j starts at 2n and drops by one per step, so neither
            // offset reaches 0 before the last differentiation
            let left = next.entry((i - 1, j)).or_insert(T::zero());
            *left = *left - c * pa;
            let right = next.entry((i, j - 1)).or_insert(T::zero());
            *right = *right + c * pb;
        }
        terms = next;
    }
    // after n derivatives every surviving term has i + j = n, so i, j ≥ 0
    let (u, v) = (T::one() - x, T::one() + x);
    let sum = terms
        .iter()
        .fold(T::zero(), |acc, (&(i, j), &c)| acc + c * u.powi(i as i32) * v.powi(j as i32));
    Ok(sum / (sign_pow::<T>(n) * factorial::<T>(n) * T::two().powi(n as i32)))
}

/// `A ln P̃_n - (B ln P̃_{n-1} - C ln P̃_{n-2})` with `P̃_0 = e`, `P̃_{-1} = 1`.
pub fn mul_recurrence_check<T: Real>(n: usize, params: &JacobiParams<T>, x: T) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("the recurrence check needs n ≥ 1".into()));
    }
    let (a, b, c) = recurrence_coeffs(n, params, x);
    let ln = |k: usize| jacobi_eval(k, params, x);
    let prev2 = if n >= 2 { ln(n - 2) } else { T::zero() };
    Ok(a * ln(n) - (b * ln(n - 1) - c * prev2))
}

/// Residual of the family's own multiplicative recurrence at step `n → n+1`,
/// with every `ln P̃_k` taken from the scaled Jacobi path:
///
/// * Legendre: `P̃_{n+1} = P̃_n^{(2n+1)x/(n+1)} / P̃_{n-1}^{n/(n+1)}`
/// * Chebyshev: `T̃_{n+1} = T̃_n^{2x} / T̃_{n-1}` and the same for `Ũ`
pub fn family_recurrence_residual<T: Real>(family: Family, n: usize, x: T) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain("the family recurrence needs n ≥ 1".into()));
    }
    let params = JacobiParams::legendre();
    let ln = |k: usize| -> Result<T> {
        Ok(scaled_jacobi_log(&MulJacobiPoly::of_family(family, k, params)?, x))
    };
    let nn = T::of_usize(n);
    match family {
        Family::Legendre => {
            let rhs = (T::two() * nn + T::one()) * x / (nn + T::one()) * ln(n)?
                - nn / (nn + T::one()) * ln(n - 1)?;
            Ok(ln(n + 1)? - rhs)
        }
        Family::Chebyshev1 | Family::Chebyshev2 => Ok(ln(n + 1)? - (T::two() * x * ln(n)? - ln(n - 1)?)),
        other => Err(Error::Config(format!(
            "no dedicated recurrence for the {} family",
            other.name()
        ))),
    }
}

/// Log-domain residuals of the Chebyshev identities at one `(n, x)`.
///
/// An entry is `None` when the identity is not stated for that `n`. The
/// `∫T̃_n` entry is skipped at `n = 1`, where its exponent `n/(n²-1)` is
/// undefined. Indefinite *-integrals are checked by *-differentiating the
/// stated antiderivative.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevReport<T> {
    pub n: usize,
    pub x: T,
    /// `d*/dx T̃_n = (Ũ_{n-1})^n`, and `1` at `n = 0`.
    pub t_derivative: Option<T>,
    /// `d*/dx Ũ_n = T̃_{n+1}^{(n+1)/(x²-1)} / Ũ_n^{x/(x²-1)}`.
    pub u_derivative: Option<T>,
    /// `∫ Ũ_n^{dx} = T̃_{n+1}^{1/(n+1)}`.
    pub u_integral: Option<T>,
    /// `∫ T̃_n^{dx} = T̃_{n+1}^{n/(n²-1)} / T̃_n^{x/(n-1)}`.
    pub t_integral: Option<T>,
    /// `T̃_n = (Ũ_n / Ũ_{n-2}) ⊙ e^{1/2}`.
    pub t_from_u_difference: Option<T>,
    /// `T̃_{n+1} = T̃_n^x / Ũ_{n-1}^{1-x²}`.
    pub t_next: Option<T>,
    /// `T̃_n = Ũ_n / Ũ_{n-1}^x`.
    pub t_from_u_shift: Option<T>,
}

impl<T: Real> ChebyshevReport<T> {
    pub fn entries(&self) -> [(&'static str, Option<T>); 7] {
        [
            ("t_derivative", self.t_derivative),
            ("u_derivative", self.u_derivative),
            ("u_integral", self.u_integral),
            ("t_integral", self.t_integral),
            ("t_from_u_difference", self.t_from_u_difference),
            ("t_next", self.t_next),
            ("t_from_u_shift", self.t_from_u_shift),
        ]
    }

    /// Largest absolute residual over the entries that were evaluated.
    pub fn max_abs(&self) -> T {
        self.entries()
            .iter()
            .filter_map(|(_, r)| *r)
            .fold(T::zero(), |m, r| m.max(r.abs()))
    }
}

/// Evaluates every Chebyshev identity at `(n, x)`. Values come from the
/// integer recurrences; derivatives from the scaled Jacobi derivative.
pub fn chebyshev_identity_suite<T: Real>(n: usize, x: T) -> Result<ChebyshevReport<T>> {
    let one_minus_x2 = T::one() - x * x;
    if one_minus_x2 == T::zero() {
        return Err(Error::ExcludedPoint {
            x: x.as_f64(),
            reason: "the Ũ *-derivative has an (x²-1) denominator",
        });
    }
    let t = |k: usize| chebyshev_t(k, x);
    let u = |k: usize| chebyshev_u(k, x);
    let dt = |k: usize| MulJacobiPoly::chebyshev_first(k).log_derivative(x, 1);
    let du = |k: usize| MulJacobiPoly::chebyshev_second(k).log_derivative(x, 1);
    let nn = T::of_usize(n);

    let t_derivative = Some(if n == 0 { dt(0) } else { dt(n) - nn * u(n - 1) });
    let u_derivative = Some(du(n) - ((nn + T::one()) * t(n + 1) - x * u(n)) / (x * x - T::one()));
    let u_integral = Some(dt(n + 1) / (nn + T::one()) - u(n));
    let t_integral = (n != 1).then(|| {
        let d = nn / (nn * nn - T::one()) * dt(n + 1) - (t(n) + x * dt(n)) / (nn - T::one());
        d - t(n)
    });
    let t_from_u_difference = (n >= 2).then(|| t(n) - T::half() * (u(n) - u(n - 2)));
    let t_next = (n >= 1).then(|| t(n + 1) - (x * t(n) - one_minus_x2 * u(n - 1)));
    let t_from_u_shift = (n >= 1).then(|| t(n) - (u(n) - x * u(n - 1)));

    Ok(ChebyshevReport {
        n,
        x,
        t_derivative,
        u_derivative,
        u_integral,
        t_integral,
        t_from_u_difference,
        t_next,
        t_from_u_shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{jacobi_at_one, jacobi_deriv2, leading_coeff};
    use crate::mulcore::star_derivative_log;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(a: f64, b: f64) -> JacobiParams<f64> {
        JacobiParams::new(a, b).unwrap()
    }

    const GRID: [(f64, f64); 5] = [(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5), (1.0, 2.0), (-0.3, 0.7)];

    #[test]
    fn log_examples() {
        assert_eq!(MulJacobiPoly::<f64>::chebyshev_first(2).log_at(0.0), -1.0);
        assert_eq!(MulJacobiPoly::<f64>::chebyshev_first(5).log_at(1.0), 1.0);
        for &(a, b) in &GRID {
            let p = params(a, b);
            for n in 0..8 {
                let got = MulJacobiPoly::jacobi(n, p).log_at(1.0);
                assert_relative_eq!(got, jacobi_at_one(n, &p), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn chebyshev_table() {
        let table: [&[f64]; 6] = [
            &[1.0],
            &[0.0, 1.0],
            &[-1.0, 0.0, 2.0],
            &[0.0, -3.0, 0.0, 4.0],
            &[1.0, 0.0, -8.0, 0.0, 8.0],
            &[0.0, 5.0, 0.0, -20.0, 0.0, 16.0],
        ];
        for (n, expect) in table.iter().enumerate() {
            let c = MulJacobiPoly::<f64>::chebyshev_first(n).exponent_coeffs().unwrap();
            assert_eq!(c.degree(), n);
            for (k, &e) in expect.iter().enumerate() {
                assert!((c.coeff(k) - e).abs() <= 1e-9, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn chebyshev_paths_agree() {
        for n in 0..=20 {
            let t = MulJacobiPoly::<f64>::chebyshev_first(n);
            let u = MulJacobiPoly::<f64>::chebyshev_second(n);
            for i in 0..=40 {
                let x = -1.0 + 0.05 * i as f64;
                assert!((t.log_at(x) - scaled_jacobi_log(&t, x)).abs() <= 1e-11, "T n={n} x={x}");
                assert!((u.log_at(x) - scaled_jacobi_log(&u, x)).abs() <= 1e-11 * (1.0 + n as f64), "U n={n}");
            }
        }
    }

    #[test]
    fn chebyshev_endpoints() {
        for n in 0..=12 {
            let t = MulJacobiPoly::<f64>::chebyshev_first(n);
            assert!((t.log_at(1.0) - 1.0).abs() <= 1e-12);
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((t.log_at(-1.0) - expect).abs() <= 1e-12);
            assert!((scaled_jacobi_log(&t, 1.0) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn gegenbauer_family() {
        // C_1^{(λ)}(x) = 2λx, C_2^{(λ)}(x) = 2λ(λ+1)x² - λ
        let a = 0.75;
        let lam = a + 0.5;
        let g1 = MulJacobiPoly::gegenbauer(1, a).unwrap();
        assert_relative_eq!(g1.log_at(0.3), 2.0 * lam * 0.3, max_relative = 1e-14);
        let g2 = MulJacobiPoly::gegenbauer(2, a).unwrap();
        let x: f64 = -0.4;
        assert_relative_eq!(g2.log_at(x), 2.0 * lam * (lam + 1.0) * x * x - lam, max_relative = 1e-13);
        // α = 0 is Legendre
        for n in 0..6 {
            let g = MulJacobiPoly::gegenbauer(n, 0.0).unwrap();
            assert_relative_eq!(g.log_at(0.37), MulJacobiPoly::legendre(n).log_at(0.37), max_relative = 1e-13);
        }
        assert!(MulJacobiPoly::gegenbauer(3, -0.5f64).is_err());
        assert!(MulJacobiPoly::gegenbauer(3, -0.7f64).is_ok());
    }

    #[test]
    fn star_derivative_examples() {
        // P_2' = 3x, so d*/dx P̃_2 at 0.5 is e^{1.5}
        let leg2 = MulJacobiPoly::<f64>::legendre(2);
        assert_relative_eq!(mul_star_derivative(&leg2, 0.5).ln(), 1.5, max_relative = 1e-15);
        let p0 = MulJacobiPoly::jacobi(0, params(1.0, 2.0));
        assert_eq!(mul_star_derivative(&p0, 0.3).value(), 1.0);
        assert_eq!(mul_star_derivative(&MulJacobiPoly::<f64>::legendre(1), 0.3).ln(), 1.0);
    }

    #[test]
    fn legendre_derivative_identity() {
        // d*/dx P̃_{n+1} / d*/dx P̃_{n-1} = P̃_n^{2n+1}
        let x = 0.41;
        for n in 1..20 {
            let lhs = mul_star_derivative(&MulJacobiPoly::<f64>::legendre(n + 1), x)
                / mul_star_derivative(&MulJacobiPoly::<f64>::legendre(n - 1), x);
            let rhs = MulJacobiPoly::<f64>::legendre(n).at(x).powf((2 * n + 1) as f64);
            assert!((lhs.ln() - rhs.ln()).abs() <= 1e-12 * (1.0 + rhs.ln().abs()), "n={n}");
        }
    }

    #[test]
    fn chebyshev_derivative_power_form() {
        // d*/dx T̃_n = Ũ_{n-1}^n holds for the first kind
        for n in 1..15 {
            let d = mul_star_derivative(&MulJacobiPoly::<f64>::chebyshev_first(n), -0.23);
            let rhs = MulJacobiPoly::<f64>::chebyshev_second(n - 1).at(-0.23).powf(n as f64);
            assert!((d.ln() - rhs.ln()).abs() <= 1e-11 * (1.0 + rhs.ln().abs()));
        }
    }

    #[test]
    fn rodrigues_examples() {
        let leg = JacobiParams::<f64>::legendre();
        assert_eq!(mul_rodrigues_log(0, &leg, 0.3).unwrap(), 1.0);
        assert_relative_eq!(mul_rodrigues_log(1, &leg, 0.3).unwrap(), 0.3, max_relative = 1e-15);
        let p = params(1.0, 2.0);
        let r = mul_rodrigues_log(4, &p, 0.25).unwrap();
        assert_relative_eq!(r, jacobi_eval(4, &p, 0.25), max_relative = 1e-9);
        assert!(matches!(mul_rodrigues_log(2, &p, 1.0), Err(Error::ExcludedPoint { .. })));
        assert!(matches!(mul_rodrigues_log(7, &p, 0.0), Err(Error::Range { .. })));
    }

    #[test]
    fn rodrigues_matches_recurrence_on_grid() {
        for &(a, b) in &GRID {
            let p = params(a, b);
            for n in 0..=MAX_RODRIGUES_DEGREE {
                for i in 1..20 {
                    let x = -1.0 + 0.1 * i as f64;
                    let r = mul_rodrigues_log(n, &p, x).unwrap();
                    let e = jacobi_eval(n, &p, x);
                    assert!((r - e).abs() <= 1e-11 * (1.0 + e.abs()), "n={n} x={x} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn recurrence_check_examples() {
        for &x in &[-0.8, 0.0, 0.45] {
            assert!(mul_recurrence_check(1, &JacobiParams::<f64>::legendre(), x).unwrap().abs() <= 1e-15);
        }
        let p = params(0.5, -0.5);
        let a = recurrence_coeffs(7, &p, 0.6).0;
        let r = mul_recurrence_check(7, &p, 0.6).unwrap();
        assert!(r.abs() <= 1e-9 * (a * jacobi_eval(7, &p, 0.6)).abs());
        assert!(family_recurrence_residual(Family::Chebyshev1, 3, 0.2f64).unwrap().abs() <= 1e-12);
        for n in 1..15 {
            for fam in [Family::Legendre, Family::Chebyshev1, Family::Chebyshev2] {
                let r = family_recurrence_residual(fam, n, -0.37f64).unwrap();
                assert!(r.abs() <= 1e-11 * (1.0 + n as f64), "{fam:?} n={n}");
            }
        }
        assert!(family_recurrence_residual(Family::Jacobi, 2, 0.1f64).is_err());
    }

    #[test]
    fn chebyshev_identities() {
        let r = chebyshev_identity_suite(3, 0.4f64).unwrap();
        assert!(r.t_from_u_shift.unwrap().abs() <= 1e-12);
        let r = chebyshev_identity_suite(4, 0.0f64).unwrap();
        assert!(r.t_derivative.unwrap().abs() <= 1e-12);
        assert_eq!(chebyshev_u(3, 0.0f64), 0.0);
        let r = chebyshev_identity_suite(0, 0.3f64).unwrap();
        assert!(r.t_derivative.unwrap().abs() <= 1e-15);
        assert!(chebyshev_identity_suite(1, 0.3f64).unwrap().t_integral.is_none());
        assert!(matches!(chebyshev_identity_suite(2, 1.0f64), Err(Error::ExcludedPoint { .. })));
        for n in 0..=12 {
            for i in 0..=38 {
                let x = -0.95 + 0.05 * i as f64;
                let r = chebyshev_identity_suite(n, x).unwrap();
                assert!(r.max_abs() <= 1e-9 * (1.0 + (n * n) as f64), "n={n} x={x} {r:?}");
            }
        }
    }

    #[test]
    fn reflection() {
        for &(a, b) in &GRID {
            let p = params(a, b);
            for n in 0..=15 {
                for &x in &[-0.9, -0.33, 0.1, 0.77] {
                    let lhs = MulJacobiPoly::jacobi(n, p).log_at(-x);
                    let rhs = sign_pow::<f64>(n) * MulJacobiPoly::jacobi(n, p.swapped()).log_at(x);
                    assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
                }
            }
        }
    }

    #[test]
    fn leading_coefficient() {
        for &(a, b) in &GRID {
            let p = params(a, b);
            for n in 0..=10 {
                let c = MulJacobiPoly::jacobi(n, p).exponent_coeffs().unwrap();
                assert_relative_eq!(c.leading(), leading_coeff(n, &p), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn log_ode_residual() {
        for &(a, b) in &GRID {
            let p = params(a, b);
            for n in 0..=12 {
                let poly = MulJacobiPoly::jacobi(n, p);
                let nn = n as f64;
                for i in 1..200 {
                    let x = -1.0 + 0.01 * i as f64;
                    let l = poly.log_at(x);
                    let d1 = poly.log_derivative(x, 1);
                    let d2 = poly.log_derivative(x, 2);
                    assert_relative_eq!(d2, jacobi_deriv2(n, &p, x), max_relative = 1e-12, epsilon = 1e-12);
                    let res = (1.0 - x * x) * d2 + (b - a - (a + b + 2.0) * x) * d1 + nn * (nn + a + b + 1.0) * l;
                    assert!((res - mul_jacobi_ode_residual(&poly, x)).abs() <= 1e-9 * (1.0 + l.abs()));
                    assert!(res.abs() <= 1e-7 * (nn * nn).max(1.0) * (1.0 + l.abs()));
                }
            }
        }
    }

    #[test]
    fn positive_function_view() {
        let p = MulJacobiPoly::jacobi(5, params(1.0, 2.0));
        let f = p.to_positive_function();
        assert!(f.has_exact_derivative());
        assert_relative_eq!(f.log_at(0.2).unwrap(), p.log_at(0.2));
        assert_relative_eq!(star_derivative_log(&f, 0.2, 1).unwrap(), mul_star_derivative(&p, 0.2).ln());
        assert_eq!(p.log_derivative(0.2, 6), 0.0);
    }

    proptest! {
        #[test]
        fn star_derivative_matches_finite_differences(n in 1usize..=8, x in -0.9f64..0.9, gi in 0usize..5) {
            let (a, b) = GRID[gi];
            let poly = MulJacobiPoly::jacobi(n, params(a, b));
            let plain = PositiveFunction::from_log("p", Interval::reference(), move |t| poly.log_at(t));
            let fd = star_derivative_log(&plain, x, 1).unwrap();
            let exact = mul_star_derivative(&poly, x).ln();
            prop_assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()));
        }
    }
}

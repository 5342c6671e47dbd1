//! Multiplicative power-series solutions of the multiplicative Jacobi
//! equation
//!
//! `(y**)^{1-x²} (y*)^{β-α-(α+β+2)x} y^γ = 1`,
//!
//! which in the log domain is the classical Jacobi equation for `L = ln y`.
//! A series `y = Π a_k^{(x-x₀)^k}` is stored by its exponents `L_k = ln a_k`.
//!
//! Around `x₀ = 0` the exponents obey
//! `L_{n+2} = λ/(n+2) L_{n+1} + μ_n/((n+2)(n+1)) L_n` with `λ = α-β` and
//! `μ_n = (n-r)(r+α+β+n+1)`, so `L_{n+1} = q_n L_1 + m_{n-1} L_0`.
//! Around `x₀ = 1` they obey
//! `2(k+1)(k+α+1) L_{k+1} = (γ - k(k+α+β+1)) L_k`.

use crate::dword::Dw;
use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::poly::MonomialPoly;
use crate::scalar::Real;
use crate::special::{factorial, pochhammer};

/// Truncation used when the caller has no better estimate.
pub const DEFAULT_TRUNCATION: usize = 64;

/// Largest `|x - x₀|` at which a truncated series is evaluated.
pub const MAX_RADIUS: f64 = 0.9;

/// Jacobi parameters together with the spectral index `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams<T> {
    params: JacobiParams<T>,
    r: T,
}

impl<T: Real> SeriesParams<T> {
    pub fn new(params: JacobiParams<T>, r: T) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::Domain(format!("spectral index r = {r} is not finite")));
        }
        Ok(Self { params, r })
    }

    pub fn params(&self) -> &JacobiParams<T> {
        &self.params
    }

    pub fn r(&self) -> T {
        self.r
    }

    /// `λ = α - β`.
    pub fn lambda(&self) -> T {
        self.params.lambda()
    }

    /// `μ_n = (n - r)(r + α + β + n + 1)`.
    pub fn mu(&self, n: usize) -> T {
        let nn = T::of_usize(n);
        (nn - self.r) * (self.r + self.params.sum() + nn + T::one())
    }

    /// `γ = r (r + α + β + 1)`.
    pub fn gamma(&self) -> T {
        self.r * (self.r + self.params.sum() + T::one())
    }
}

/// The sequences `m_0..m_{N-1}`, `q_1..q_N` and `p_1..p_N`, with
/// `p_n = q_n + m_{n-1}`. Accessors take the mathematical index.
#[derive(Debug, Clone, PartialEq)]
pub struct PqSequences<T> {
    m: Vec<T>,
    q: Vec<T>,
    p: Vec<T>,
}

impl<T: Real> PqSequences<T> {
    /// Largest `n` for which `q_n` and `p_n` are available.
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// `m_k` for `0 ≤ k < N`.
    pub fn m(&self, k: usize) -> T {
        self.m[k]
    }

    /// `q_n` for `1 ≤ n ≤ N`.
    pub fn q(&self, n: usize) -> T {
        self.q[n - 1]
    }

    /// `p_n` for `1 ≤ n ≤ N`; `p_0 = 1`.
    pub fn p(&self, n: usize) -> T {
        if n == 0 {
            T::one()
        } else {
            self.p[n - 1]
        }
    }

    pub fn m_values(&self) -> &[T] {
        &self.m
    }

    pub fn q_values(&self) -> &[T] {
        &self.q
    }

    pub fn p_values(&self) -> &[T] {
        &self.p
    }
}

fn check_length(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Range {
            what: "sequence length N (minimum 2)",
            value: n,
            limit: 2,
        });
    }
    Ok(())
}

/// Builds `m`, `q`, `p` up to index `N ≥ 2`.
///
/// `q` and `m` share the recurrence
/// `s_{n+1} = λ s_n/(n+2) + μ_n s_{n-1}/((n+2)(n+1))` (indexed so that
/// `L_{n+1} = q_n L_1 + m_{n-1} L_0`), seeded by `q_0 = 1, q_{-1} = 0` and
/// `m_{-1} = 0, m_{-2} = 1`.
pub fn pq_sequences<T: Real>(sp: &SeriesParams<T>, n_max: usize) -> Result<PqSequences<T>> {
    check_length(n_max)?;
    let lambda = sp.lambda();
    let (mut q_prev, mut q_cur) = (T::zero(), T::one());
    let (mut m_prev, mut m_cur) = (T::one(), T::zero());
    let mut q = Vec::with_capacity(n_max);
    let mut m = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let nn = T::of_usize(n);
        let c1 = lambda / (nn + T::two());
        let c2 = sp.mu(n) / ((nn + T::two()) * (nn + T::one()));
        let q_next = c1 * q_cur + c2 * q_prev;
        let m_next = c1 * m_cur + c2 * m_prev;
        q.push(q_next);
        m.push(m_next);
        q_prev = q_cur;
        q_cur = q_next;
        m_prev = m_cur;
        m_cur = m_next;
    }
    let p = q.iter().zip(&m).map(|(&a, &b)| a + b).collect();
    Ok(PqSequences { m, q, p })
}

/// `p_0..p_N` as polynomials in `λ` for fixed `μ_0, μ_1, …`, from
/// `p_0 = 1`, `p_1 = (λ + μ_0)/2` and
/// `p_{n+1} = λ p_n/(n+2) + μ_n p_{n-1}/((n+2)(n+1))`.
pub fn p_polynomials<T: Real>(mu: &[T], n_max: usize) -> Result<Vec<MonomialPoly<T>>> {
    if mu.len() < n_max {
        return Err(Error::Config(format!(
            "p_{n_max} needs μ_0..μ_{}, got {} values",
            n_max.saturating_sub(1),
            mu.len()
        )));
    }
    let mut out = vec![MonomialPoly::constant(T::one())];
    if n_max == 0 {
        return Ok(out);
    }
    out.push(MonomialPoly::new(vec![mu[0] * T::half(), T::half()]));
    let lam = MonomialPoly::x();
    for n in 1..n_max {
        let nn = T::of_usize(n);
        let a = (&lam * &out[n]).scale((nn + T::two()).recip());
        let b = out[n - 1].scale(mu[n] / ((nn + T::two()) * (nn + T::one())));
        out.push(&a + &b);
    }
    Ok(out)
}

/// Expansion point of a [`SeriesSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Center {
    Zero,
    One,
}

impl Center {
    pub fn value<T: Real>(self) -> T {
        match self {
            Center::Zero => T::zero(),
            Center::One => T::one(),
        }
    }
}

/// Truncated multiplicative power series `Π_{k ≤ N} a_k^{(x-x₀)^k}`, stored
/// as `exponents[k] = ln a_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution<T> {
    center: Center,
    log_a0: T,
    log_a1: Option<T>,
    exponents: Vec<T>,
    truncated_exactly: bool,
    // exponents[k] / log_a0 in double-word precision, kept for the x₀ = 1
    // polynomial whose (x-1)^k expansion cancels heavily near x = -1.
    refined: Option<Vec<Dw<T>>>,
}

impl<T: Real> SeriesSolution<T> {
    pub fn center(&self) -> Center {
        self.center
    }

    pub fn log_a0(&self) -> T {
        self.log_a0
    }

    /// Present for the `x₀ = 0` form only.
    pub fn log_a1(&self) -> Option<T> {
        self.log_a1
    }

    pub fn exponents(&self) -> &[T] {
        &self.exponents
    }

    /// Highest stored power.
    pub fn truncation(&self) -> usize {
        self.exponents.len() - 1
    }

    /// True when the recurrence itself terminated: the exponents past the
    /// last nonzero one are exactly zero, so no truncation error remains.
    pub fn truncated_exactly(&self) -> bool {
        self.truncated_exactly
    }

    fn offset(&self, x: T) -> T {
        x - self.center.value::<T>()
    }

    /// `ln y(x) = Σ exponents[k] (x - x₀)^k`.
    pub fn log_value(&self, x: T) -> T {
        match &self.refined {
            Some(ratios) => {
                let t = Dw::two_sum(x, -self.center.value::<T>());
                let sum = ratios.iter().rev().fold(Dw::new(T::zero()), |acc, &c| acc.mul(t).add(c));
                sum.mul(Dw::new(self.log_a0)).value()
            }
            None => self.log_derivative(x, 0),
        }
    }

    /// Term-wise `order`-th derivative of `ln y`.
    pub fn log_derivative(&self, x: T, order: usize) -> T {
        let t = self.offset(x);
        let mut acc = T::zero();
        for k in (order..self.exponents.len()).rev() {
            // k!/(k-order)!
            let falling = pochhammer(T::of_usize(k + 1 - order), order);
            acc = acc * t + self.exponents[k] * falling;
        }
        acc
    }

    /// Magnitude of the last two stored terms at `x`; zero when the series
    /// terminated. A heuristic for the truncation error, since chains of
    /// one parity may vanish.
    pub fn tail_estimate(&self, x: T) -> T {
        if self.truncated_exactly {
            return T::zero();
        }
        let t = self.offset(x).abs();
        let n = self.exponents.len();
        let last = self.exponents[n - 1].abs() * t.powi((n - 1) as i32);
        let before = if n >= 2 {
            self.exponents[n - 2].abs() * t.powi((n - 2) as i32)
        } else {
            T::zero()
        };
        last.max(before)
    }
}

fn ends_in_zeros<T: Real>(exps: &[T]) -> bool {
    exps.len() >= 2 && exps[exps.len() - 1] == T::zero() && exps[exps.len() - 2] == T::zero()
}

/// General solution around `x₀ = 0` through `a_{n+1} = a_1^{q_n} a_0^{m_{n-1}}`,
/// with powers `0..=N`.
pub fn series_solution_at_zero<T: Real>(
    sp: &SeriesParams<T>,
    log_a0: T,
    log_a1: T,
    n_max: usize,
) -> Result<SeriesSolution<T>> {
    if n_max < 1 {
        return Err(Error::Range {
            what: "series truncation N (minimum 1)",
            value: n_max,
            limit: 1,
        });
    }
    let mut exponents = vec![log_a0, log_a1];
    if n_max >= 2 {
        let seq = pq_sequences(sp, (n_max - 1).max(2))?;
        for n in 1..n_max {
            exponents.push(seq.q(n) * log_a1 + seq.m(n - 1) * log_a0);
        }
    }
    let truncated_exactly = ends_in_zeros(&exponents);
    Ok(SeriesSolution {
        center: Center::Zero,
        log_a0,
        log_a1: Some(log_a1),
        exponents,
        truncated_exactly,
        refined: None,
    })
}

/// Solution around `x₀ = 1` for spectral parameter `γ`, powers `0..=N`, by
/// `L_{k+1} = (γ - k(k+α+β+1)) L_k / (2(k+1)(k+α+1))`.
pub fn series_solution_at_one<T: Real>(
    params: &JacobiParams<T>,
    gamma: T,
    log_a0: T,
    n_max: usize,
) -> SeriesSolution<T> {
    let s1 = params.sum() + T::one();
    let a1 = params.alpha() + T::one();
    let mut exponents = Vec::with_capacity(n_max + 1);
    exponents.push(log_a0);
    for k in 0..n_max {
        let kk = T::of_usize(k);
        let num = gamma - kk * (kk + s1);
        let den = T::two() * (kk + T::one()) * (kk + a1);
        let next = num * exponents[k] / den;
        exponents.push(next);
    }
    let truncated_exactly = exponents.iter().skip(1).any(|&e| e == T::zero());
    SeriesSolution {
        center: Center::One,
        log_a0,
        log_a1: None,
        exponents,
        truncated_exactly,
        refined: None,
    }
}

/// `a_0 = e^{(α+1)_n / n!}`, the choice that makes the polynomial solution
/// equal to `P̃_n`.
pub fn canonical_log_a0<T: Real>(n: usize, params: &JacobiParams<T>) -> T {
    pochhammer(params.alpha() + T::one(), n) / factorial::<T>(n)
}

/// The polynomial solution of degree `n` around `x₀ = 1`:
/// `L_k = L_0 · 2^{-k} binom(n,k) (α+β+n+1)_k / (α+1)_k` for `k ≤ n`.
/// Two trailing zero exponents are stored to make the termination explicit.
///
/// The ratios `L_k / L_0` are built in double-word arithmetic through
/// `L_{k+1}/L_k = (n-k)(α+β+n+1+k) / (2(k+1)(α+1+k))`, and
/// [`SeriesSolution::log_value`] evaluates them the same way, since at
/// `x = -1` the terms exceed the result by up to ~10^7 for `n = 10`.
pub fn polynomial_solution_at_one<T: Real>(n: usize, params: &JacobiParams<T>, log_a0: T) -> SeriesSolution<T> {
    let s = Dw::two_sum(params.alpha(), params.beta());
    let mut ratios = vec![Dw::new(T::one())];
    for k in 0..n {
        let num = Dw::new(T::of_usize(n - k)).mul(s.add(Dw::new(T::of_usize(n + 1 + k))));
        let den = Dw::new(T::of_usize(2 * (k + 1))).mul(Dw::two_sum(params.alpha(), T::of_usize(k + 1)));
        let next = ratios[k].mul(num.div(den));
        ratios.push(next);
    }
    let mut exponents: Vec<T> = ratios.iter().map(|c| log_a0 * c.value()).collect();
    exponents.extend([T::zero(), T::zero()]);
    SeriesSolution {
        center: Center::One,
        log_a0,
        log_a1: None,
        exponents,
        truncated_exactly: true,
        refined: Some(ratios),
    }
}

/// The degree `n ≥ 0` with `|γ - n(n+α+β+1)| ≤ tol`, if any.
///
/// Solves the quadratic and tests the integers on both sides of each
/// nonnegative root, keeping the closest match.
pub fn detect_polynomial<T: Real>(gamma: T, params: &JacobiParams<T>, tol: T) -> Option<usize> {
    let s1 = params.sum() + T::one();
    let disc = s1 * s1 + T::lit(4.0) * gamma;
    let root = if disc < T::zero() {
        // no real root; the nearest candidate is at the vertex
        T::zero()
    } else {
        disc.sqrt()
    };
    let mut best: Option<(usize, T)> = None;
    for r in [(-s1 + root) * T::half(), (-s1 - root) * T::half()] {
        for c in [r.floor(), r.ceil()] {
            if c < T::zero() || !c.is_finite() {
                continue;
            }
            let err = (gamma - c * (c + s1)).abs();
            if err <= tol && best.is_none_or(|(_, e)| err < e) {
                best = c.to_usize().map(|n| (n, err));
            }
        }
    }
    best.map(|(n, _)| n)
}

/// `(1-x²) L'' + (β-α-(α+β+2)x) L' + γ L` for the truncated series, with
/// `γ` taken from `sp`.
pub fn ode_log_residual<T: Real>(sol: &SeriesSolution<T>, sp: &SeriesParams<T>, x: T) -> Result<T> {
    let center = sol.center.value::<T>();
    if (x - center).abs() > T::lit(MAX_RADIUS) {
        return Err(Error::Truncation {
            x: x.as_f64(),
            center: center.as_f64(),
            radius: MAX_RADIUS,
        });
    }
    let (a, b) = (sp.params.alpha(), sp.params.beta());
    let l = sol.log_value(x);
    let d1 = sol.log_derivative(x, 1);
    let d2 = sol.log_derivative(x, 2);
    Ok((T::one() - x * x) * d2 + (b - a - (a + b + T::two()) * x) * d1 + sp.gamma() * l)
}

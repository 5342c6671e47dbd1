//! Multiplicative calculus kernel.
//!
//! Positive quantities live in the log domain: an [`ExpReal`] stores `ln v`
//! and a [`PositiveFunction`] stores `x ↦ ln f(x)`. Exponentiation only
//! happens when a caller asks for a raw value.

use std::fmt;
use std::ops::{Div, Mul};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::QuadratureRule;
use crate::scalar::Real;

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Real> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInterval {
                a: a.as_f64(),
                b: b.as_f64(),
            })
        }
    }

    /// `[-1, 1]`.
    pub fn reference() -> Self {
        Self {
            a: -T::one(),
            b: T::one(),
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn len(&self) -> T {
        self.b - self.a
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.a && x <= self.b
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.contains(other.a) && self.contains(other.b)
    }

    /// Affine map `[a, b] → [-1, 1]`, `x ↦ 2(x-a)/(b-a) - 1`.
    pub fn to_reference(&self, x: T) -> T {
        T::two() * (x - self.a) / self.len() - T::one()
    }

    /// Inverse of [`Interval::to_reference`].
    pub fn from_reference(&self, t: T) -> T {
        self.a + (t + T::one()) * self.len() * T::half()
    }
}

/// An element of the exponential reals, stored by its logarithm.
///
/// Ordinary multiplication is the multiplicative addition `⊕`; [`ExpReal::odot`]
/// is `k ⊙ s = k^{ln s}`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExpReal<T> {
    ln: T,
}

impl<T: Real> ExpReal<T> {
    pub fn from_ln(ln: T) -> Self {
        Self { ln }
    }

    pub fn new(value: T) -> Result<Self> {
        if value > T::zero() && value.is_finite() {
            Ok(Self { ln: value.ln() })
        } else {
            Err(Error::Domain(format!("{value} is not a positive real")))
        }
    }

    /// `1`, the `⊕` identity.
    pub fn one() -> Self {
        Self { ln: T::zero() }
    }

    /// `e`, the `⊙` identity.
    pub fn e() -> Self {
        Self { ln: T::one() }
    }

    pub fn ln(self) -> T {
        self.ln
    }

    /// The raw value `exp(ln)`; may overflow to `inf` or underflow to `0`.
    pub fn value(self) -> T {
        self.ln.exp()
    }

    pub fn odot(self, other: Self) -> Self {
        Self {
            ln: self.ln * other.ln,
        }
    }

    pub fn powf(self, k: T) -> Self {
        Self { ln: self.ln * k }
    }

    pub fn recip(self) -> Self {
        Self { ln: -self.ln }
    }
}

impl<T: Real> Mul for ExpReal<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self {
            ln: self.ln + rhs.ln,
        }
    }
}

impl<T: Real> Div for ExpReal<T> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        Self {
            ln: self.ln - rhs.ln,
        }
    }
}

impl<T: Real> fmt::Display for ExpReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{}", self.ln)
    }
}

/// `k ⊙ s = k^{ln s} = exp(ln k · ln s)` on raw positive reals.
pub fn odot<T: Real>(k: T, s: T) -> Result<T> {
    Ok(ExpReal::new(k)?.odot(ExpReal::new(s)?).value())
}

/// `k ⊕ s = k s` on raw positive reals.
pub fn oplus<T: Real>(k: T, s: T) -> Result<T> {
    Ok((ExpReal::new(k)? * ExpReal::new(s)?).value())
}

type LogFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
type LogDerivFn<T> = Arc<dyn Fn(T, usize) -> Option<T> + Send + Sync>;

/// A positive function on an interval, held as `x ↦ ln f(x)`.
///
/// An optional callback may supply exact derivatives of `ln f`; when present
/// it takes precedence over finite differences in [`star_derivative`].
#[derive(Clone)]
pub struct PositiveFunction<T> {
    label: String,
    domain: Interval<T>,
    log_eval: LogFn<T>,
    log_deriv: Option<LogDerivFn<T>>,
}

impl<T: Real> fmt::Debug for PositiveFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PositiveFunction")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("exact_derivative", &self.log_deriv.is_some())
            .finish()
    }
}

impl<T: Real> PositiveFunction<T> {
    /// From `ln f` directly.
    pub fn from_log<F>(label: impl Into<String>, domain: Interval<T>, log_eval: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            domain,
            log_eval: Arc::new(log_eval),
            log_deriv: None,
        }
    }

    /// From raw values; non-positive values surface as evaluation errors.
    pub fn from_values<F>(label: impl Into<String>, domain: Interval<T>, f: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self::from_log(label, domain, move |x| {
            let v = f(x);
            if v > T::zero() {
                v.ln()
            } else {
                T::nan()
            }
        })
    }

    /// Constant `c > 0` on `domain`.
    pub fn constant(c: T, domain: Interval<T>) -> Result<Self> {
        let ln_c = ExpReal::new(c)?.ln();
        Ok(Self::from_log(format!("const({c})"), domain, move |_| ln_c)
            .with_log_derivative(|_, order| (order > 0).then(T::zero)))
    }

    /// `base^{r(x)}` with `r(x) = Σ coeffs[k] x^k`, with exact log-derivatives.
    pub fn exp_poly(base: T, coeffs: Vec<T>, domain: Interval<T>) -> Result<Self> {
        let ln_base = ExpReal::new(base)?.ln();
        let poly = crate::poly::MonomialPoly::new(coeffs.iter().map(|&c| c * ln_base).collect());
        let for_deriv = poly.clone();
        Ok(Self::from_log(format!("exp_poly({base})"), domain, move |x| poly.eval(x))
            .with_log_derivative(move |x, order| {
                let mut d = for_deriv.clone();
                for _ in 0..order {
                    d = d.derivative();
                }
                Some(d.eval(x))
            }))
    }

    /// Attaches an exact `(x, order) ↦ (ln f)^{(order)}(x)` callback.
    /// Returning `None` for an order falls back to finite differences.
    pub fn with_log_derivative<D>(mut self, d: D) -> Self
    where
        D: Fn(T, usize) -> Option<T> + Send + Sync + 'static,
    {
        self.log_deriv = Some(Arc::new(d));
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> &Interval<T> {
        &self.domain
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.log_deriv.is_some()
    }

    /// `ln f(x)` without checks.
    pub fn log_raw(&self, x: T) -> T {
        (self.log_eval)(x)
    }

    /// `ln f(x)`; a non-finite value is an [`Error::Evaluation`].
    pub fn log_at(&self, x: T) -> Result<T> {
        let v = (self.log_eval)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                label: self.label.clone(),
                x: x.as_f64(),
                value: v.as_f64(),
            })
        }
    }

    pub fn at(&self, x: T) -> Result<ExpReal<T>> {
        self.log_at(x).map(ExpReal::from_ln)
    }

    /// `f(x)` as a raw value.
    pub fn value_at(&self, x: T) -> Result<T> {
        self.log_at(x).map(T::exp)
    }

    fn exact_log_derivative(&self, x: T, order: usize) -> Option<T> {
        self.log_deriv.as_ref().and_then(|d| d(x, order))
    }

    /// `f ⊕ g`: the pointwise product.
    pub fn product(&self, other: &Self) -> Self {
        let (f, g) = (self.log_eval.clone(), other.log_eval.clone());
        let label = format!("({})*({})", self.label, other.label);
        let mut out = Self::from_log(label, self.domain, move |x| f(x) + g(x));
        if let (Some(df), Some(dg)) = (self.log_deriv.clone(), other.log_deriv.clone()) {
            out = out.with_log_derivative(move |x, k| Some(df(x, k)? + dg(x, k)?));
        }
        out
    }

    /// `f^k`.
    pub fn powf(&self, k: T) -> Self {
        let f = self.log_eval.clone();
        let mut out = Self::from_log(format!("({})^{k}", self.label), self.domain, move |x| k * f(x));
        if let Some(df) = self.log_deriv.clone() {
            out = out.with_log_derivative(move |x, o| Some(k * df(x, o)?));
        }
        out
    }

    /// Pullback of a function on `[-1, 1]` to `iv` through `x ↦ 2(x-a)/(b-a) - 1`.
    pub fn on_interval(&self, iv: Interval<T>) -> Self {
        let f = self.log_eval.clone();
        let mut out = Self::from_log(self.label.clone(), iv, move |x| f(iv.to_reference(x)));
        if let Some(df) = self.log_deriv.clone() {
            let scale = T::two() / iv.len();
            out = out.with_log_derivative(move |x, o| {
                Some(df(iv.to_reference(x), o)? * scale.powi(o as i32))
            });
        }
        out
    }

    /// A function on its own domain `[a, b]` seen on `[-1, 1]`.
    pub fn to_reference(&self) -> Self {
        let iv = self.domain;
        let f = self.log_eval.clone();
        let mut out = Self::from_log(self.label.clone(), Interval::reference(), move |t| {
            f(iv.from_reference(t))
        });
        if let Some(df) = self.log_deriv.clone() {
            let scale = iv.len() * T::half();
            out = out.with_log_derivative(move |t, o| {
                Some(df(iv.from_reference(t), o)? * scale.powi(o as i32))
            });
        }
        out
    }
}

/// Largest order accepted by [`star_derivative`].
pub const MAX_STAR_ORDER: usize = 4;

const BASE_STEP: f64 = 1e-5;

// Fourth-order central stencils: (offsets, weights, denominator factor)
// such that f^{(k)}(x) ≈ Σ w_j f(x + j h) / (factor h^k).
fn stencil(order: usize) -> (&'static [i32], &'static [f64], f64) {
    match order {
        1 => (&[-2, -1, 1, 2], &[1.0, -8.0, 8.0, -1.0], 12.0),
        2 => (&[-2, -1, 0, 1, 2], &[-1.0, 16.0, -30.0, 16.0, -1.0], 12.0),
        3 => (&[-3, -2, -1, 1, 2, 3], &[1.0, -8.0, 13.0, -13.0, 8.0, -1.0], 8.0),
        4 => (&[-3, -2, -1, 0, 1, 2, 3], &[-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0], 6.0),
        _ => unreachable!("order checked by caller"),
    }
}

/// `ln f^{*(order)}(x) = (ln f)^{(order)}(x)`.
///
/// Uses the exact callback when the function has one, otherwise a fourth-order
/// central stencil with step `max(1, |x|) · 1e-5^{1/order}`.
pub fn star_derivative_log<T: Real>(f: &PositiveFunction<T>, x: T, order: usize) -> Result<T> {
    if order > MAX_STAR_ORDER {
        return Err(Error::Range {
            what: "multiplicative derivative order",
            value: order,
            limit: MAX_STAR_ORDER,
        });
    }
    if order == 0 {
        return f.log_at(x);
    }
    if let Some(d) = f.exact_log_derivative(x, order) {
        return Ok(d);
    }
    let h = T::lit(BASE_STEP).powf(T::of_usize(order).recip()) * x.abs().max(T::one());
    let (offsets, weights, factor) = stencil(order);
    let reach = T::of_i64(offsets.iter().map(|o| o.abs()).max().unwrap_or(0) as i64) * h;
    let dom = f.domain();
    if x - reach < dom.a() || x + reach > dom.b() {
        return Err(Error::Stencil {
            x: x.as_f64(),
            order,
            step: h.as_f64(),
            a: dom.a().as_f64(),
            b: dom.b().as_f64(),
        });
    }
    let mut acc = T::zero();
    for (&o, &w) in offsets.iter().zip(weights) {
        acc = acc + T::lit(w) * f.log_at(x + T::of_i64(o as i64) * h)?;
    }
    Ok(acc / (T::lit(factor) * h.powi(order as i32)))
}

/// `f^{*(order)}(x) = exp((ln f)^{(order)}(x))`.
pub fn star_derivative<T: Real>(f: &PositiveFunction<T>, x: T, order: usize) -> Result<ExpReal<T>> {
    star_derivative_log(f, x, order).map(ExpReal::from_ln)
}

/// `∫_a^b f(x)^{dx} = exp(∫_a^b ln f dx)`, using a Legendre rule remapped to `iv`.
pub fn star_integral<T: Real>(
    f: &PositiveFunction<T>,
    iv: &Interval<T>,
    rule: &QuadratureRule<T>,
) -> Result<ExpReal<T>> {
    if !f.domain().contains_interval(iv) {
        return Err(Error::Config(format!(
            "integration interval [{}, {}] is not inside the domain of `{}`",
            iv.a(),
            iv.b(),
            f.label()
        )));
    }
    let (nodes, weights) = rule.remap_unit(iv)?;
    let mut acc = T::zero();
    for (&x, &w) in nodes.iter().zip(&weights) {
        acc = acc + w * f.log_at(x)?;
    }
    Ok(ExpReal::from_ln(acc))
}

fn check_reference_domain<T: Real>(f: &PositiveFunction<T>) -> Result<()> {
    if f.domain().contains_interval(&Interval::reference()) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "`{}` must be defined on [-1, 1] for a weighted inner product",
            f.label()
        )))
    }
}

/// `⟨f, g⟩_{*,ω} = ∫ [f ⊙ g]^{ω dx} = exp(Σ w_i ln f(x_i) ln g(x_i))` over the
/// ω-absorbing rule.
pub fn star_inner<T: Real>(
    f: &PositiveFunction<T>,
    g: &PositiveFunction<T>,
    rule: &QuadratureRule<T>,
) -> Result<ExpReal<T>> {
    check_reference_domain(f)?;
    check_reference_domain(g)?;
    let mut acc = T::zero();
    for (x, w) in rule.iter() {
        let fx = f.at(x)?;
        let gx = g.at(x)?;
        acc = acc + w * fx.odot(gx).ln();
    }
    Ok(ExpReal::from_ln(acc))
}

/// `‖f‖_{*,ω} = exp(‖ln f‖_ω)`, the ⊙-square root of `⟨f, f⟩_{*,ω}`.
pub fn star_norm<T: Real>(f: &PositiveFunction<T>, rule: &QuadratureRule<T>) -> Result<ExpReal<T>> {
    Ok(ExpReal::from_ln(star_inner(f, f, rule)?.ln().sqrt()))
}

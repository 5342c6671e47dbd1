//! Named target functions and their resolution into `PosFn`.

use std::f64::consts::LN_2;
use std::fmt;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use mulspec::{Interval, PosFn, RealFn};
use serde::Serialize;

use crate::expr::{parse_expression, Expr};

pub struct Builtin {
    pub name: &'static str,
    pub formula: &'static str,
    pub log: fn(f64) -> f64,
    pub log_deriv: Option<fn(f64, usize) -> Option<f64>>,
    /// `f = π · r` split for hybrid approximation: `π` and `ln r`.
    pub factors: Option<(fn(f64) -> f64, fn(f64) -> f64)>,
}

fn gaussian_log(x: f64) -> f64 {
    -100.0 * (x - 0.2) * (x - 0.2)
}

fn gaussian_deriv(x: f64, order: usize) -> Option<f64> {
    Some(match order {
        0 => gaussian_log(x),
        1 => -200.0 * (x - 0.2),
        2 => -200.0,
        _ => 0.0,
    })
}

fn runge_log(x: f64) -> f64 {
    -(25.0 * x * x).ln_1p()
}

fn mixed_poly(x: f64) -> f64 {
    let x2 = x * x;
    2.0 * x2 + x2 * x2
}

fn mixed_positive_log(x: f64) -> f64 {
    (10.0 * x).cos() * LN_2
}

fn mixed_log(x: f64) -> f64 {
    mixed_poly(x).ln() + mixed_positive_log(x)
}

fn const_e_log(_: f64) -> f64 {
    1.0
}

fn const_e_deriv(_: f64, order: usize) -> Option<f64> {
    Some(if order == 0 { 1.0 } else { 0.0 })
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "gaussian100",
        formula: "exp(-100*(x-1/5)^2)",
        log: gaussian_log,
        log_deriv: Some(gaussian_deriv),
        factors: None,
    },
    Builtin {
        name: "runge25",
        formula: "1/(1+25*x^2)",
        log: runge_log,
        log_deriv: None,
        factors: None,
    },
    Builtin {
        name: "mixed_cheb",
        formula: "(2*x^2+x^4)*2^cos(10*x)",
        log: mixed_log,
        log_deriv: None,
        factors: Some((mixed_poly, mixed_positive_log)),
    },
    Builtin {
        name: "const_e",
        formula: "e",
        log: const_e_log,
        log_deriv: Some(const_e_deriv),
        factors: None,
    },
];

pub fn builtin(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

impl Builtin {
    pub fn function(&self) -> PosFn {
        let f = PosFn::from_log(self.name, Interval::reference(), self.log);
        match self.log_deriv {
            Some(d) => f.with_log_derivative(d),
            None => f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Builtin(String),
    Expression(String),
    ExpPoly { base: f64, coeffs: Vec<f64> },
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Builtin(name) => f.write_str(name),
            Source::Expression(text) => f.write_str(text),
            Source::ExpPoly { base, coeffs } => {
                let cs: Vec<String> = coeffs.iter().map(|c| format!("{c:?}")).collect();
                write!(f, "{base:?}^({})", cs.join(","))
            }
        }
    }
}

/// Parses `BASE:C0,C1,...` as given to `--exp-poly`.
pub fn parse_exp_poly(text: &str) -> Result<(f64, Vec<f64>), String> {
    let (base, coeffs) = text
        .split_once(':')
        .ok_or_else(|| format!("expected BASE:C0,C1,..., got `{text}`"))?;
    let base: f64 = base.trim().parse().map_err(|_| format!("bad base `{base}`"))?;
    if !(base > 0.0 && base.is_finite()) {
        return Err(format!("base must be positive, got {base}"));
    }
    let coeffs = coeffs
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|_| format!("bad coefficient `{c}`")))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err("coefficients must be finite".into());
    }
    Ok((base, coeffs))
}

fn expression_function(label: &str, expr: Expr) -> PosFn {
    PosFn::from_log(label, Interval::reference(), move |x| match expr.eval(x) {
        Ok(v) if v > 0.0 => v.ln(),
        _ => f64::NAN,
    })
}

/// A target function together with where it came from.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    pub source: Source,
    pub resolved: PosFn,
    expr: Option<Expr>,
}

impl FunctionSpec {
    pub fn resolve(source: Source) -> Result<Self> {
        let (resolved, expr) = match &source {
            Source::Builtin(name) => {
                let b = builtin(name).ok_or_else(|| {
                    let names: Vec<_> = BUILTINS.iter().map(|b| b.name).collect();
                    anyhow!("--function: unknown builtin `{name}` (known: {})", names.join(", "))
                })?;
                (b.function(), None)
            }
            Source::Expression(text) => {
                let e = parse_expression(text).with_context(|| format!("--expr `{text}`"))?;
                (expression_function(text, e.clone()), Some(e))
            }
            Source::ExpPoly { base, coeffs } => (
                PosFn::exp_poly(*base, coeffs.clone(), Interval::reference()).context("--exp-poly")?,
                None,
            ),
        };
        Ok(Self { source, resolved, expr })
    }

    /// Fails unless an expression target is positive at every point.
    pub fn check_positive(&self, points: &[f64]) -> Result<()> {
        let Some(e) = &self.expr else { return Ok(()) };
        for &x in points {
            let v = e.eval(x).with_context(|| format!("--expr `{}`", self.source))?;
            if v <= 0.0 {
                bail!("--expr `{}` is not positive at x = {x:?} (value {v:?})", self.source);
            }
        }
        Ok(())
    }

    /// The registered `π · r` split, if any.
    pub fn factorization(&self) -> Option<(RealFn<f64>, PosFn)> {
        let Source::Builtin(name) = &self.source else { return None };
        let (poly, log_r) = builtin(name)?.factors?;
        Some((Arc::new(poly), PosFn::from_log(format!("{name}/positive"), Interval::reference(), log_r)))
    }
}

/// Hybrid factors supplied as expressions.
pub fn expression_factors(poly: &str, positive: &str) -> Result<(RealFn<f64>, PosFn, Expr)> {
    let p = parse_expression(poly).with_context(|| format!("--poly-factor `{poly}`"))?;
    let r = parse_expression(positive).with_context(|| format!("--positive-factor `{positive}`"))?;
    let p_fn: RealFn<f64> = Arc::new(move |x| p.eval(x).unwrap_or(f64::NAN));
    Ok((p_fn, expression_function(positive, r.clone()), r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        for b in BUILTINS {
            let spec = FunctionSpec::resolve(Source::Builtin(b.name.into())).unwrap();
            assert_eq!(spec.resolved.label(), b.name);
        }
        assert!(FunctionSpec::resolve(Source::Builtin("nope".into())).is_err());
        let e = FunctionSpec::resolve(Source::Builtin("const_e".into())).unwrap();
        assert_eq!(e.resolved.value_at(0.3).unwrap(), std::f64::consts::E);
    }

    #[test]
    fn expression_matches_builtin_gaussian() {
        let g = FunctionSpec::resolve(Source::Builtin("gaussian100".into())).unwrap();
        let e = FunctionSpec::resolve(Source::Expression("exp(-100*(x-1/5)^2)".into())).unwrap();
        for i in 0..=1000 {
            let x = -1.0 + 0.002 * i as f64;
            let (a, b) = (g.resolved.value_at(x).unwrap(), e.resolved.value_at(x).unwrap());
            assert!((a - b).abs() <= 1e-15, "x={x}");
        }
    }

    #[test]
    fn positivity_is_checked_on_points() {
        let e = FunctionSpec::resolve(Source::Expression("x".into())).unwrap();
        assert!(e.check_positive(&[0.5, 1.0]).is_ok());
        let err = e.check_positive(&[0.5, -0.25]).unwrap_err().to_string();
        assert!(err.contains("-0.25"), "{err}");
        let e = FunctionSpec::resolve(Source::Expression("ln(x)".into())).unwrap();
        let err = format!("{:#}", e.check_positive(&[-0.5]).unwrap_err());
        assert!(err.contains("x = -0.5"), "{err}");
    }

    #[test]
    fn exp_poly_flag() {
        assert_eq!(parse_exp_poly("2:1,0,3"), Ok((2.0, vec![1.0, 0.0, 3.0])));
        assert!(parse_exp_poly("0:1").is_err());
        assert!(parse_exp_poly("2").is_err());
        let (base, coeffs) = parse_exp_poly("2:1,0,3").unwrap();
        let f = FunctionSpec::resolve(Source::ExpPoly { base, coeffs }).unwrap();
        assert!((f.resolved.value_at(1.0).unwrap() - 16.0).abs() <= 1e-13);
    }

    #[test]
    fn mixed_factorization_recombines() {
        let f = FunctionSpec::resolve(Source::Builtin("mixed_cheb".into())).unwrap();
        let (poly, r) = f.factorization().unwrap();
        for &x in &[-0.9, -0.3, 0.2, 0.77] {
            let whole = f.resolved.value_at(x).unwrap();
            let parts = poly(x) * r.value_at(x).unwrap();
            assert!((whole - parts).abs() <= 1e-14 * whole);
        }
    }
}

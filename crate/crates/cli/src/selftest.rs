//! Quick invariant checks behind `mulspec selftest`.

use std::fmt;

use mulspec::jacobi::jacobi_norm2;
use mulspec::odeseries::canonical_log_a0;
use mulspec::quad::moment;
use mulspec::{
    build_approximant, gauss_jacobi_rule, mul_fourier_coeffs, mul_jacobi_ode_residual, polynomial_solution_at_one,
    pq_sequences, star_inner, Interval, MulPoly, Params, PosFn, SeriesSpec, Target,
};

use crate::expr::parse_expression;
use crate::registry::BUILTINS;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

const GRID: [(f64, f64); 5] = [(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5), (1.0, 2.0), (-0.3, 0.7)];

fn params(a: f64, b: f64) -> Params {
    Params::new(a, b).expect("grid parameters are valid")
}

// Largest observed error against a bound; errors of the library count as failure.
fn check(name: &'static str, bound: f64, worst: mulspec::Result<f64>) -> Check {
    match worst {
        Ok(w) => Check {
            name,
            passed: w <= bound,
            detail: format!("max error {w:.3e} (bound {bound:.0e})"),
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn gaussian_coefficients() -> mulspec::Result<f64> {
    let g = PosFn::from_log("gaussian100", Interval::reference(), |x| -100.0 * (x - 0.2) * (x - 0.2));
    let rule = gauss_jacobi_rule(64, &Params::legendre())?;
    let c = mul_fourier_coeffs(&g, 10, &rule)?;
    let expect = [-112.0 / 3.0, 40.0, -200.0 / 3.0];
    Ok(c.iter()
        .enumerate()
        .map(|(n, v)| (v - expect.get(n).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max))
}

fn chebyshev_table() -> mulspec::Result<f64> {
    let table: [&[f64]; 6] = [
        &[1.0],
        &[0.0, 1.0],
        &[-1.0, 0.0, 2.0],
        &[0.0, -3.0, 0.0, 4.0],
        &[1.0, 0.0, -8.0, 0.0, 8.0],
        &[0.0, 5.0, 0.0, -20.0, 0.0, 16.0],
    ];
    let mut worst = 0.0f64;
    for (n, row) in table.iter().enumerate() {
        let c = MulPoly::chebyshev_first(n).exponent_coeffs()?;
        for (k, &v) in row.iter().enumerate() {
            worst = worst.max((c.coeff(k) - v).abs());
        }
    }
    Ok(worst)
}

fn orthogonality() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for &(a, b) in &GRID[..3] {
        let p = params(a, b);
        for n in 0..=6 {
            for m in 0..=6 {
                let rule = gauss_jacobi_rule(n + m + 2, &p)?;
                let fnn = MulPoly::jacobi(n, p).to_positive_function();
                let fm = MulPoly::jacobi(m, p).to_positive_function();
                let h = jacobi_norm2(n, &p);
                let expect = if n == m { h } else { 0.0 };
                let got = star_inner(&fnn, &fm, &rule)?.ln();
                worst = worst.max((got - expect).abs() / (1.0 + h));
            }
        }
    }
    Ok(worst)
}

fn quadrature() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for &(a, b) in &GRID {
        let p = params(a, b);
        for m in [1, 4, 9, 12] {
            let rule = gauss_jacobi_rule(m, &p)?;
            for k in 0..2 * m {
                let q = rule.integrate(|x| x.powi(k as i32))?;
                let scale = rule.integrate(|x| x.abs().powi(k as i32))?;
                worst = worst.max((q - moment(k, &p)).abs() / scale);
            }
        }
    }
    Ok(worst)
}

fn ode_residuals() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for &(a, b) in &GRID {
        let p = params(a, b);
        for n in 1..=8 {
            let poly = MulPoly::jacobi(n, p);
            for i in 1..50 {
                let x = -1.0 + 0.04 * i as f64;
                let r = mul_jacobi_ode_residual(&poly, x);
                worst = worst.max(r.abs() / ((n * n) as f64 * (1.0 + poly.log_at(x).abs())));
            }
        }
    }
    Ok(worst)
}

fn reconciliation() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for &(a, b) in &GRID {
        let p = params(a, b);
        for n in 0..=8 {
            let sol = polynomial_solution_at_one(n, &p, canonical_log_a0(n, &p));
            let poly = MulPoly::jacobi(n, p);
            for i in 0..=20 {
                let x = -1.0 + 0.1 * i as f64;
                worst = worst.max((sol.log_value(x) - poly.log_at(x)).abs());
            }
        }
    }
    Ok(worst)
}

fn pq_identity() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for &(a, b) in &GRID {
        let sp = SeriesSpec::new(params(a, b), 2.3)?;
        let s = pq_sequences(&sp, 60)?;
        for n in 1..=60 {
            worst = worst.max((s.p(n) - s.q(n) - s.m(n - 1)).abs());
        }
    }
    Ok(worst)
}

fn finite_product() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for &(a, b) in &GRID {
        let p = params(a, b);
        let rule = gauss_jacobi_rule(64, &p)?;
        let coeffs = vec![0.3, -1.0, 0.5, 2.0, -0.25];
        let f = PosFn::exp_poly(3.7, coeffs, Interval::reference())?;
        let ap = build_approximant(&Target::Multiplicative(f.clone()), 4, 0, &rule)?;
        for i in 0..=100 {
            let x = -1.0 + 0.02 * i as f64;
            worst = worst.max((f.log_at(x)? - ap.exponent(x)).abs());
        }
        let tail = mul_fourier_coeffs(&f, 10, &rule)?;
        worst = worst.max(tail[5..].iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    Ok(worst)
}

fn log_bridge() -> mulspec::Result<f64> {
    let p = params(0.5, -0.2);
    let rule = gauss_jacobi_rule(40, &p)?;
    let f = PosFn::from_log("f", Interval::reference(), |x| (2.0 * x).sin() + 0.5);
    let g = PosFn::from_log("g", Interval::reference(), |x| x * x - 0.3 * x);
    let lhs = star_inner(&f, &g, &rule)?.ln();
    let rhs = rule.integrate(|x| ((2.0 * x).sin() + 0.5) * (x * x - 0.3 * x))?;
    Ok((lhs - rhs).abs())
}

fn parser_round_trip() -> Check {
    let mut failures = Vec::new();
    for b in BUILTINS {
        let parsed = parse_expression(b.formula);
        let ok = matches!(&parsed, Ok(e) if parse_expression(&e.to_string()).as_ref() == Ok(e));
        if !ok {
            failures.push(b.name);
        }
    }
    Check {
        name: "parser round-trip",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} builtin formulas", BUILTINS.len())
        } else {
            format!("failed for {}", failures.join(", "))
        },
    }
}

fn registry_fidelity() -> mulspec::Result<f64> {
    let mut worst = 0.0f64;
    for b in BUILTINS {
        let e = parse_expression(b.formula).expect("builtin formulas parse");
        let f = b.function();
        for i in 0..=200 {
            let x = -1.0 + 0.01 * i as f64 + 0.003;
            if x > 1.0 {
                continue;
            }
            let v = e.eval(x).expect("builtin formulas evaluate");
            worst = worst.max((f.log_at(x)? - v.ln()).abs());
        }
    }
    Ok(worst)
}

pub fn run_all() -> Vec<Check> {
    vec![
        check("gaussian coefficients", 1e-10, gaussian_coefficients()),
        check("chebyshev exponent table", 1e-9, chebyshev_table()),
        check("multiplicative orthogonality", 1e-8, orthogonality()),
        check("quadrature exactness", 1e-12, quadrature()),
        check("log-domain ODE residual", 1e-7, ode_residuals()),
        check("series reconciliation", 1e-11, reconciliation()),
        check("p = q + m", 1e-12, pq_identity()),
        check("finite-product exactness", 1e-9, finite_product()),
        check("log bridge", 1e-12, log_bridge()),
        parser_round_trip(),
        check("registry fidelity", 1e-13, registry_fidelity()),
    ]
}

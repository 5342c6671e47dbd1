//! One function per subcommand, each producing a [`Report`].

use anyhow::{anyhow, bail, Context, Result};
use mulspec::odeseries::series_solution_at_zero;
use mulspec::quad::default_rule_size;
use mulspec::{
    build_approximant, classical_fourier_coeffs, detect_polynomial, gauss_jacobi_rule, grid_report,
    mul_fourier_coeffs, ode_log_residual, Approx, Family, Grid, GridReport, Interval, MulPoly, Params,
    PosFn, RealFn, Rule, SeriesSpec, SupErrors, Target,
};
use serde_json::{json, Value};

use crate::config::{GridSpec, Mode, RunConfig};
use crate::output::{json_float, json_floats, Cell, Report, Table};
use crate::registry::{expression_factors, FunctionSpec, Source};

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    match cfg.command {
        "poly" => poly(cfg),
        "rule" => rule(cfg),
        "coeffs" => coeffs(cfg),
        "approx" => approx(cfg),
        "compare" => compare(cfg),
        "solve-ode" => solve_ode(cfg),
        other => bail!("`{other}` does not produce a table"),
    }
}

fn params(cfg: &RunConfig) -> Result<Params> {
    Ok(Params::new(cfg.alpha, cfg.beta)?)
}

fn grid_points(g: &GridSpec) -> Result<Vec<f64>> {
    Grid::uniform_on(g.count, g.from, g.to)
        .points()
        .map_err(|e| anyhow!("--grid/--from/--to: {e}"))
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("{flag} is required"))
}

fn poly(cfg: &RunConfig) -> Result<Report> {
    let family: Family = cfg.family.as_deref().unwrap_or("jacobi").parse()?;
    let p = MulPoly::of_family(family, required(cfg.n, "--n")?, params(cfg)?)?;
    let mut table = Table::new(&["x", "log_value", "value"]);
    for x in grid_points(&required(cfg.grid, "--grid")?)? {
        let l = p.log_at(x);
        table.push(vec![x.into(), l.into(), l.exp().into()]);
    }
    let mut report = Report::table(table);
    report.summary = json!({ "family": family.name(), "scale": json_float(p.scale()) });
    Ok(report)
}

fn rule(cfg: &RunConfig) -> Result<Report> {
    let p = params(cfg)?;
    let r = gauss_jacobi_rule(required(cfg.nodes, "--nodes")?, &p)?;
    let mut table = Table::new(&["node", "weight"]);
    for (x, w) in r.iter() {
        table.push(vec![x.into(), w.into()]);
    }
    let total: f64 = r.weights().iter().sum();
    let mut report = Report::table(table);
    report.summary = json!({ "weight_sum": json_float(total), "total_mass": json_float(p.total_mass()) });
    report.notes.push(format!("weight sum {total:?}, total mass {:?}", p.total_mass()));
    Ok(report)
}

struct Setup {
    spec: FunctionSpec,
    rule: Rule,
}

fn setup(cfg: &RunConfig) -> Result<Setup> {
    let source = cfg.function.clone().ok_or_else(|| anyhow!("--function is required"))?;
    let spec = FunctionSpec::resolve(source)?;
    let n = required(cfg.n, "--N")?;
    let size = cfg.nodes.unwrap_or_else(|| default_rule_size(n.max(cfg.m.unwrap_or(0))));
    let rule = gauss_jacobi_rule(size, &params(cfg)?)?;
    spec.check_positive(rule.nodes())?;
    Ok(Setup { spec, rule })
}

fn hybrid_factors(cfg: &RunConfig, s: &Setup) -> Result<(RealFn<f64>, PosFn)> {
    if let Some([poly, positive]) = &cfg.factors {
        let (p, r, r_expr) = expression_factors(poly, positive)?;
        for &x in s.rule.nodes() {
            let v = r_expr.eval(x).with_context(|| format!("--positive-factor `{positive}`"))?;
            if v <= 0.0 {
                bail!("--positive-factor `{positive}` is not positive at x = {x:?}");
            }
        }
        return Ok((p, r));
    }
    s.spec.factorization().ok_or_else(|| {
        anyhow!(
            "hybrid mode needs --poly-factor and --positive-factor for `{}`",
            s.spec.source
        )
    })
}

fn target(cfg: &RunConfig, s: &Setup, mode: Mode) -> Result<Target<f64>> {
    Ok(match mode {
        Mode::Classical => Target::classical_of(&s.spec.resolved),
        Mode::Multiplicative => Target::Multiplicative(s.spec.resolved.clone()),
        Mode::Hybrid => {
            let (polynomial, positive) = hybrid_factors(cfg, s)?;
            Target::Hybrid { polynomial, positive }
        }
    })
}

fn coefficients_json(aps: &[Approx]) -> Value {
    Value::Array(
        aps.iter()
            .map(|ap| {
                json!({
                    "label": ap.label(),
                    "kind": ap.kind().name(),
                    "classical": json_floats(ap.coeffs_c()),
                    "multiplicative": json_floats(ap.coeffs_f()),
                })
            })
            .collect(),
    )
}

fn coeffs(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let n = required(cfg.n, "--N")?;
    let mode = cfg.mode.unwrap_or(Mode::Multiplicative);
    let mut table;
    let ap = match mode {
        Mode::Classical => {
            let f = s.spec.resolved.clone();
            let c = classical_fourier_coeffs(&move |x| f.log_raw(x).exp(), n, &s.rule)?;
            table = Table::new(&["n", "coefficient"]);
            for (k, &v) in c.iter().enumerate() {
                table.push(vec![k.into(), v.into()]);
            }
            Approx::classical(*s.rule.params(), c)
        }
        Mode::Multiplicative => {
            let f = mul_fourier_coeffs(&s.spec.resolved, n, &s.rule)?;
            table = Table::new(&["n", "coefficient"]);
            for (k, &v) in f.iter().enumerate() {
                table.push(vec![k.into(), v.into()]);
            }
            Approx::multiplicative(*s.rule.params(), f)
        }
        Mode::Hybrid => {
            let ap = build_approximant(&target(cfg, &s, mode)?, n, required(cfg.m, "--M")?, &s.rule)?;
            table = Table::new(&["n", "classical", "multiplicative"]);
            for k in 0..ap.coeffs_c().len().max(ap.coeffs_f().len()) {
                table.push(vec![
                    k.into(),
                    ap.coeffs_c().get(k).copied().into(),
                    ap.coeffs_f().get(k).copied().into(),
                ]);
            }
            ap
        }
    };
    let mut report = Report::table(table);
    report.coefficients = coefficients_json(std::slice::from_ref(&ap));
    report.summary = json!({ "rule_size": s.rule.len() });
    Ok(report)
}

fn intervals(cfg: &RunConfig) -> Result<Vec<Interval<f64>>> {
    cfg.intervals_or_default()
        .iter()
        .map(|&[a, b]| Interval::new(a, b).map_err(|e| anyhow!("--interval: {e}")))
        .collect()
}

fn sup_json(s: &SupErrors<f64>) -> Value {
    json!({
        "sup_abs_err": json_float(s.abs),
        "sup_log_err": s.log.map_or(Value::Null, json_float),
        "points": s.points,
    })
}

fn sup_note(label: &str, span: &str, s: &SupErrors<f64>) -> String {
    let log = s.log.map_or_else(|| "n/a".to_string(), |v| format!("{v:?}"));
    format!("{label} on {span}: sup_abs_err={:?} sup_log_err={log} ({} points)", s.abs, s.points)
}

fn summarize(report: &GridReport<f64>, grid: &GridSpec) -> (Value, Vec<String>) {
    let mut notes = Vec::new();
    let mut out = Vec::new();
    for s in &report.summary {
        notes.push(sup_note(&s.label, &format!("[{:?}, {:?}]", grid.from, grid.to), &s.whole));
        let mut by = Vec::new();
        for (iv, e) in &s.by_interval {
            notes.push(sup_note(&s.label, &format!("[{:?}, {:?}]", iv.a(), iv.b()), e));
            let mut v = sup_json(e);
            v["from"] = json_float(iv.a());
            v["to"] = json_float(iv.b());
            by.push(v);
        }
        out.push(json!({ "label": s.label, "whole": sup_json(&s.whole), "intervals": by }));
    }
    (Value::Array(out), notes)
}

fn run_grid(cfg: &RunConfig, s: &Setup, aps: &[Approx]) -> Result<(GridReport<f64>, GridSpec)> {
    let g = required(cfg.grid, "--grid")?;
    let points = grid_points(&g)?;
    s.spec.check_positive(&points)?;
    Ok((grid_report(&s.spec.resolved, aps, &Grid::Points(points), &intervals(cfg)?)?, g))
}

fn approx(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let mode = cfg.mode.unwrap_or(Mode::Multiplicative);
    let ap = build_approximant(&target(cfg, &s, mode)?, required(cfg.n, "--N")?, cfg.m.unwrap_or(0), &s.rule)?;
    let aps = [ap];
    let (grid, g) = run_grid(cfg, &s, &aps)?;
    let mut table = Table::new(&["x", "f", "approx", "abs_err", "log_err"]);
    for row in &grid.rows {
        table.push(vec![
            row.x.into(),
            row.f.into(),
            row.approx[0].into(),
            row.abs_err[0].into(),
            row.log_err[0].into(),
        ]);
    }
    let (summary, notes) = summarize(&grid, &g);
    Ok(Report {
        table,
        coefficients: coefficients_json(&aps),
        summary,
        notes,
    })
}

fn compare(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let n = required(cfg.n, "--N")?;
    let mut modes = vec![Mode::Classical, Mode::Multiplicative];
    if cfg.m.is_some() {
        modes.push(Mode::Hybrid);
    }
    let aps = modes
        .iter()
        .map(|&mode| build_approximant(&target(cfg, &s, mode)?, n, cfg.m.unwrap_or(0), &s.rule).map_err(Into::into))
        .collect::<Result<Vec<_>>>()?;
    let (grid, g) = run_grid(cfg, &s, &aps)?;
    let mut header = vec!["x".to_string(), "f".to_string()];
    for ap in &aps {
        let k = ap.kind().name();
        header.extend([k.to_string(), format!("{k}_abs_err"), format!("{k}_log_err")]);
    }
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    for row in &grid.rows {
        let mut cells: Vec<Cell> = vec![row.x.into(), row.f.into()];
        for j in 0..aps.len() {
            cells.extend([row.approx[j].into(), row.abs_err[j].into(), row.log_err[j].into()]);
        }
        table.push(cells);
    }
    let (summary, notes) = summarize(&grid, &g);
    Ok(Report {
        table,
        coefficients: coefficients_json(&aps),
        summary,
        notes,
    })
}

fn solve_ode(cfg: &RunConfig) -> Result<Report> {
    let ode = cfg.ode.ok_or_else(|| anyhow!("--r is required"))?;
    let p = params(cfg)?;
    let sp = SeriesSpec::new(p, ode.r)?;
    let sol = series_solution_at_zero(&sp, ode.log_a0, ode.log_a1, ode.trunc)?;
    let mut table = Table::new(&["x", "log_y", "residual"]);
    let mut worst = 0.0f64;
    let mut tail = 0.0f64;
    for x in grid_points(&required(cfg.grid, "--grid")?)? {
        let res = ode_log_residual(&sol, &sp, x).map_err(|e| anyhow!("--from/--to: {e}"))?;
        worst = worst.max(res.abs());
        tail = tail.max(sol.tail_estimate(x).abs());
        table.push(vec![x.into(), sol.log_value(x).into(), res.into()]);
    }
    let degree = detect_polynomial(sp.gamma(), &p, 1e-9);
    let mut report = Report::table(table);
    report.coefficients = json!({ "exponents": json_floats(sol.exponents()) });
    report.summary = json!({
        "gamma": json_float(sp.gamma()),
        "max_abs_residual": json_float(worst),
        "max_tail_estimate": json_float(tail),
        "truncated_exactly": sol.truncated_exactly(),
        "polynomial_degree": degree,
    });
    report.notes.push(format!(
        "gamma={:?} max_abs_residual={worst:?} max_tail_estimate={tail:?} truncated_exactly={}",
        sp.gamma(),
        sol.truncated_exactly()
    ));
    if let Some(n) = degree {
        report.notes.push(format!("gamma = n(n+alpha+beta+1) with n = {n}: a polynomial solution exists"));
    }
    Ok(report)
}

/// Shorthand for tests and the selftest: resolve a builtin by name.
pub fn builtin_spec(name: &str) -> Result<FunctionSpec> {
    FunctionSpec::resolve(Source::Builtin(name.to_string()))
}

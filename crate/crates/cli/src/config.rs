//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mulspec::odeseries::MAX_RADIUS;
use mulspec::{ApproximantKind, Family};
use serde::Serialize;

use crate::registry::{parse_exp_poly, Source};

pub const DEFAULT_GRID: usize = 1001;

/// Paper close-up panels, used when no `--interval` is given.
pub const DEFAULT_INTERVALS: [[f64; 2]; 3] = [[0.9, 1.0], [0.6, 1.0], [-0.4, 0.4]];

#[derive(Debug, Parser)]
#[command(name = "mulspec", version, about = "Multiplicative Jacobi polynomials and Jacobi-Fourier products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate ln P̃_n and P̃_n on a grid.
    Poly(PolyArgs),
    /// Print a Gauss-Jacobi rule.
    Rule(RuleArgs),
    /// Print Jacobi-Fourier coefficients of a function.
    Coeffs(CoeffsArgs),
    /// Tabulate one approximant against its target.
    Approx(ApproxArgs),
    /// Tabulate classical, multiplicative and optionally hybrid approximants side by side.
    Compare(CompareArgs),
    /// Tabulate a truncated series solution of the log-domain Jacobi equation around 0.
    SolveOde(SolveOdeArgs),
    /// Run the built-in property checks.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Multiplicative,
    Hybrid,
}

impl From<Mode> for ApproximantKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Classical => ApproximantKind::Classical,
            Mode::Multiplicative => ApproximantKind::Multiplicative,
            Mode::Hybrid => ApproximantKind::Hybrid,
        }
    }
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Number of equispaced points, endpoints included.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionArgs {
    /// Builtin: gaussian100, runge25, mixed_cheb, const_e.
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long)]
    pub expr: Option<String>,
    /// `BASE:C0,C1,...` for BASE^(C0 + C1 x + ...).
    #[arg(long = "exp-poly", allow_hyphen_values = true)]
    pub exp_poly: Option<String>,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// Classical factor π of a hybrid target, as an expression.
    #[arg(long = "poly-factor", requires = "positive_factor")]
    pub poly_factor: Option<String>,
    /// Positive factor r of a hybrid target, as an expression.
    #[arg(long = "positive-factor", requires = "poly_factor")]
    pub positive_factor: Option<String>,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, default_value = "jacobi")]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long)]
    pub nodes: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, value_enum, default_value_t = Mode::Multiplicative)]
    pub mode: Mode,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[command(flatten)]
    pub factors: FactorArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long, value_enum, default_value_t = Mode::Multiplicative)]
    pub mode: Mode,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Sub-interval `A:B` for summary sup-errors; repeatable.
    #[arg(long = "interval", allow_hyphen_values = true)]
    pub intervals: Vec<String>,
    #[command(flatten)]
    pub factors: FactorArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[arg(long = "N")]
    pub n: usize,
    /// Classical degree of the hybrid; the hybrid column is added only when given.
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long = "interval", allow_hyphen_values = true)]
    pub intervals: Vec<String>,
    #[command(flatten)]
    pub factors: FactorArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolveOdeArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub r: f64,
    /// ln a_0.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a0: f64,
    /// ln a_1.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a1: f64,
    #[arg(long, default_value_t = mulspec::odeseries::DEFAULT_TRUNCATION)]
    pub trunc: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub count: usize,
    pub from: f64,
    pub to: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeSpec {
    pub r: f64,
    pub log_a0: f64,
    pub log_a1: f64,
    pub trunc: usize,
}

/// Everything a run needs, after validation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<Source>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub intervals: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode: Option<OdeSpec>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    fn base(command: &'static str, params: Option<&ParamArgs>, output: Option<&OutputArgs>) -> Self {
        Self {
            command,
            alpha: params.map_or(0.0, |p| p.alpha),
            beta: params.map_or(0.0, |p| p.beta),
            family: None,
            function: None,
            mode: None,
            n: None,
            m: None,
            nodes: None,
            grid: None,
            intervals: Vec::new(),
            factors: None,
            ode: None,
            out: output.and_then(|o| o.out.clone()),
            format: output.map_or(Format::Csv, |o| o.format),
        }
    }

    pub fn from_command(cmd: &Command) -> Result<Self> {
        let cfg = match cmd {
            Command::Poly(a) => Self {
                family: Some(a.family.clone()),
                n: Some(a.n),
                grid: Some(grid_spec(&a.grid, (-1.0, 1.0))),
                ..Self::base("poly", Some(&a.params), Some(&a.output))
            },
            Command::Rule(a) => Self {
                nodes: Some(a.nodes),
                ..Self::base("rule", Some(&a.params), Some(&a.output))
            },
            Command::Coeffs(a) => Self {
                function: Some(source(&a.function)?),
                mode: Some(a.mode),
                n: Some(a.n),
                m: a.m,
                nodes: a.nodes,
                factors: factors(&a.factors),
                ..Self::base("coeffs", Some(&a.params), Some(&a.output))
            },
            Command::Approx(a) => Self {
                function: Some(source(&a.function)?),
                mode: Some(a.mode),
                n: Some(a.n),
                m: a.m,
                nodes: a.nodes,
                grid: Some(grid_spec(&a.grid, (-1.0, 1.0))),
                intervals: intervals(&a.intervals)?,
                factors: factors(&a.factors),
                ..Self::base("approx", Some(&a.params), Some(&a.output))
            },
            Command::Compare(a) => Self {
                function: Some(source(&a.function)?),
                n: Some(a.n),
                m: a.m,
                nodes: a.nodes,
                grid: Some(grid_spec(&a.grid, (-1.0, 1.0))),
                intervals: intervals(&a.intervals)?,
                factors: factors(&a.factors),
                ..Self::base("compare", Some(&a.params), Some(&a.output))
            },
            Command::SolveOde(a) => Self {
                grid: Some(grid_spec(&a.grid, (-MAX_RADIUS, MAX_RADIUS))),
                ode: Some(OdeSpec {
                    r: a.r,
                    log_a0: a.a0,
                    log_a1: a.a1,
                    trunc: a.trunc,
                }),
                ..Self::base("solve-ode", Some(&a.params), Some(&a.output))
            },
            Command::Selftest => Self::base("selftest", None, None),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks ranges; each message names the offending flag.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -1.0 && self.alpha.is_finite()) {
            bail!("--alpha must be finite and > -1, got {}", self.alpha);
        }
        if !(self.beta > -1.0 && self.beta.is_finite()) {
            bail!("--beta must be finite and > -1, got {}", self.beta);
        }
        if let Some(family) = &self.family {
            let f: Family = family.parse().map_err(|e| anyhow::anyhow!("--family: {e}"))?;
            if f == Family::Gegenbauer && self.alpha == -0.5 {
                bail!("--alpha = -0.5 is not allowed for the gegenbauer family (zero index)");
            }
        }
        if self.nodes == Some(0) {
            bail!("--nodes must be at least 1");
        }
        if let Some(g) = &self.grid {
            if g.count < 2 {
                bail!("--grid must be at least 2, got {}", g.count);
            }
            if !(g.from.is_finite() && g.to.is_finite() && g.from < g.to) {
                bail!("--from/--to must satisfy from < to, got [{}, {}]", g.from, g.to);
            }
            let (lo, hi) = if self.command == "solve-ode" { (-MAX_RADIUS, MAX_RADIUS) } else { (-1.0, 1.0) };
            if g.from < lo || g.to > hi {
                bail!("--from/--to must lie within [{lo}, {hi}], got [{}, {}]", g.from, g.to);
            }
        }
        for iv in &self.intervals {
            if !(iv[0] < iv[1] && iv[0] >= -1.0 && iv[1] <= 1.0) {
                bail!("--interval must be A:B with -1 <= A < B <= 1, got {}:{}", iv[0], iv[1]);
            }
        }
        if self.mode == Some(Mode::Hybrid) && self.m.is_none() {
            bail!("--M is required with --mode hybrid");
        }
        if let Some(ode) = &self.ode {
            if ode.trunc < 1 {
                bail!("--trunc must be at least 1");
            }
            if !(ode.r.is_finite() && ode.log_a0.is_finite() && ode.log_a1.is_finite()) {
                bail!("--r/--a0/--a1 must be finite");
            }
        }
        Ok(())
    }

    pub fn intervals_or_default(&self) -> Vec<[f64; 2]> {
        if self.intervals.is_empty() {
            DEFAULT_INTERVALS.to_vec()
        } else {
            self.intervals.clone()
        }
    }
}

fn grid_spec(g: &GridArgs, (from, to): (f64, f64)) -> GridSpec {
    GridSpec {
        count: g.grid,
        from: g.from.unwrap_or(from),
        to: g.to.unwrap_or(to),
    }
}

fn source(f: &FunctionArgs) -> Result<Source> {
    Ok(match (&f.function, &f.expr, &f.exp_poly) {
        (Some(name), _, _) => Source::Builtin(name.clone()),
        (_, Some(text), _) => Source::Expression(text.clone()),
        (_, _, Some(spec)) => {
            let (base, coeffs) = parse_exp_poly(spec).map_err(|e| anyhow::anyhow!("--exp-poly: {e}"))?;
            Source::ExpPoly { base, coeffs }
        }
        _ => bail!("one of --function, --expr, --exp-poly is required"),
    })
}

fn factors(f: &FactorArgs) -> Option<[String; 2]> {
    Some([f.poly_factor.clone()?, f.positive_factor.clone()?])
}

fn intervals(raw: &[String]) -> Result<Vec<[f64; 2]>> {
    raw.iter()
        .map(|s| {
            let parsed = s
                .split_once(':')
                .and_then(|(a, b)| Some([a.trim().parse().ok()?, b.trim().parse().ok()?]));
            parsed.ok_or_else(|| anyhow::anyhow!("--interval expects A:B, got `{s}`"))
        })
        .collect()
}

//! Library side of the `mulspec` command-line tool.

pub mod commands;
pub mod config;
pub mod expr;
pub mod output;
pub mod registry;
pub mod selftest;

use anyhow::Result;
use clap::Parser;

pub use config::{Cli, Command, RunConfig};

/// Applies `MULSPEC_THREADS` to the global rayon pool.
pub fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("MULSPEC_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow::anyhow!("MULSPEC_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

/// Runs a validated configuration; `Ok(false)` means a selftest failure.
pub fn run(cfg: &RunConfig) -> Result<bool> {
    if cfg.command == "selftest" {
        let checks = selftest::run_all();
        for c in &checks {
            println!("{c}");
        }
        return Ok(checks.iter().all(|c| c.passed));
    }
    commands::execute(cfg)?.emit(cfg)?;
    Ok(true)
}

/// Parses `args` (program name first) and runs them.
pub fn run_args<I, S>(args: I) -> Result<bool>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    run(&RunConfig::from_command(&cli.command)?)
}

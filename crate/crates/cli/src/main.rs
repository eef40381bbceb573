//! `polypart` command-line front end.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde_json::json;

use config::{Flags, RunConfig};
use report::Report;

#[derive(Parser)]
#[command(name = "polypart", version, about = "Partitions into polynomial values: exact counts and asymptotics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the hypotheses on f; exit 0 when all hold, 1 otherwise
    Validate(Flags),
    /// Exact counts p_f(0..=max n)
    Exact(Flags),
    /// Saddle point and asymptotic estimate per n
    Asym(Flags),
    /// Exact against asymptotic, with ratios
    Compare(Flags),
    /// Zeta diagnostics for the roots of f
    Zeta(Flags),
    /// Generating log: direct sum against the asymptotic form on an (X, Theta) grid
    Phicheck(Flags),
    /// Complete exponential sums, C_f, Weyl fit and major arcs
    Expsum(Flags),
}

fn run(name: &str, flags: &Flags, f: impl FnOnce(&RunConfig) -> Result<(Report, bool)>) -> Result<bool> {
    let cfg = RunConfig::resolve(flags)?;
    let (rep, ok) = f(&cfg)?;
    let text = rep.render(name, &cfg);
    match &cfg.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let always = |r: Result<Report>| r.map(|r| (r, true));
    let res = match &cli.cmd {
        Cmd::Validate(f) => run("validate", f, commands::validate),
        Cmd::Exact(f) => run("exact", f, |c| always(commands::exact(c))),
        Cmd::Asym(f) => run("asym", f, |c| always(commands::asym(c))),
        Cmd::Compare(f) => run("compare", f, |c| always(commands::compare(c))),
        Cmd::Zeta(f) => run("zeta", f, |c| always(commands::zeta(c))),
        Cmd::Phicheck(f) => run("phicheck", f, |c| always(commands::phicheck(c))),
        Cmd::Expsum(f) => run("expsum", f, |c| always(commands::expsum(c))),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let kind = e.downcast_ref::<polypart::Error>().map(|e| e.kind()).unwrap_or("Config");
            let msg = json!({ "error": { "kind": kind, "message": format!("{e:#}") } });
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

//! `qsp`: batch verification of the dust family, its quantum and FRW
//! readings, the Newtonian levels and the gedanken ledgers.
//!
//! Exit codes: 0 when every gated quantity is under tolerance, 1 when one is
//! not, 2 for usage, config or parse errors.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod report;

use config::{Cli, Command, RunConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qsp_core::Error),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Parses `args` (program name first), runs the subcommand and writes the
/// report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_TOLERANCE,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(cli.common)?;
    let run = match &cli.command {
        Command::Residuals => commands::residuals(&cfg)?,
        Command::Quantum(args) => commands::quantum(&cfg, args)?,
        Command::Frw => commands::frw(&cfg)?,
        Command::Bohr(args) => commands::bohr(&cfg, args)?,
        Command::Gedanken(args) => commands::gedanken(&cfg, args)?,
    };
    run.report.write(cfg.output, out)?;
    Ok(run.pass)
}

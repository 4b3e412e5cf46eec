//! `maslov`: JSON in, deterministic JSON reports out.
//!
//! Exit codes: 0 success, 1 internal error or engine mismatch, 2 input
//! error, 3 precondition error, 4 property-suite failure.

mod commands;
mod input;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use maslov_core::Tolerances;
use serde_json::{json, Value};

use commands::Command;
use report::{digest, CliError, Report};

#[derive(Debug, Parser)]
#[command(name = "maslov", version, about = "Maslov and Hörmander indices of Lagrangian paths")]
struct Cli {
    /// Relative singular-value and eigenvalue threshold.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.rank)]
    tol_rank: f64,
    /// Crossings are accepted below a transversality margin of √tol-cross.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.cross)]
    tol_cross: f64,
    #[arg(long, global = true, env = "MASLOV_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// No report on stdout and no messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn tolerances(&self) -> Result<Tolerances, CliError> {
        for (name, v) in [("--tol-rank", self.tol_rank), ("--tol-cross", self.tol_cross)] {
            if !(v > 0.0 && v < 1e-2) {
                return Err(CliError::input(format!("{name} must lie in (0, 1e-2), got {v}")));
            }
        }
        Ok(Tolerances { rank: self.tol_rank, lagrangian: self.tol_rank, eigen: self.tol_rank, cross: self.tol_cross })
    }
}

fn execute(cli: &Cli) -> (Report, u8) {
    let mut report = Report {
        command: cli.command.echo(),
        inputs_digest: String::new(),
        results: Value::Null,
        diagnostics: Value::Null,
        error: None,
        version: env!("CARGO_PKG_VERSION"),
        seed: cli.seed,
    };
    let outcome = cli.tolerances().and_then(|tol| {
        let inputs = cli.command.gather()?;
        let canonical = json!({
            "command": cli.command.name(),
            "inputs": inputs,
            "seed": cli.seed,
            "tolerances": { "rank": tol.rank, "cross": tol.cross },
        });
        report.inputs_digest = digest(&canonical);
        cli.command.run(&inputs, cli.seed, &tol)
    });
    match outcome {
        Ok(o) => {
            report.results = o.results;
            report.diagnostics = o.diagnostics;
            (report, o.status.exit_code())
        }
        Err(e) => {
            let code = e.class.exit_code();
            report.error = Some(e);
            (report, code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = execute(&cli);
    let text = report.to_json();
    if let Some(err) = &report.error {
        if !cli.quiet {
            eprintln!("maslov {}: {err}", cli.command.name());
        }
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                if !cli.quiet {
                    eprintln!("maslov: cannot write {}: {e}", path.display());
                }
                return ExitCode::from(report::EXIT_INPUT);
            }
        }
        None if !cli.quiet => {
            // a closed pipe is not worth a panic
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
        None => {}
    }
    ExitCode::from(code)
}

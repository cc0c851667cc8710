//! `qhlab`: runs a JSON experiment config and writes machine-readable reports.
//!
//! Exit status: 0 when every selected check passes, 1 when a check fails, 2 when the
//! config or the arguments are invalid.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use qh_toeplitz::experiment::{self, CheckKind, ExperimentConfig, Overrides, CONFIG_SCHEMA};

#[derive(Debug, Parser)]
#[command(name = "qhlab", version, about = "Toeplitz operators on weighted Bergman spaces of projective space")]
struct Args {
    /// Experiment config (JSON).
    #[arg(long, required_unless_present = "print_schema")]
    config: Option<PathBuf>,

    /// Output directory; overrides `output_dir` from the config.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Checks to run, replacing the config's list.
    #[arg(long = "check", num_args = 1.., value_parser = parse_check)]
    checks: Vec<CheckKind>,

    /// Seed for Monte-Carlo and geometry sampling; overrides the config.
    #[arg(long)]
    seed: Option<u64>,

    /// Multiplies every tolerance (divides the separation floor). Exploratory runs only.
    #[arg(long)]
    tolerance_scale: Option<f64>,

    /// Print the config JSON schema and exit.
    #[arg(long)]
    print_schema: bool,
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse().map_err(|e: qh_toeplitz::Error| e.to_string())
}

enum Failure {
    Usage(anyhow::Error),
    Checks,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(args: Args) -> Result<(), Failure> {
    if args.print_schema {
        print!("{CONFIG_SCHEMA}");
        return Ok(());
    }
    let path = args.config.expect("clap enforces --config");
    let mut config = ExperimentConfig::from_path(&path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    let overrides = Overrides {
        output_dir: args.out.map(|p| p.to_string_lossy().into_owned()),
        checks: (!args.checks.is_empty()).then_some(args.checks),
        seed: args.seed,
        tolerance_scale: args.tolerance_scale,
    };
    config.apply(&overrides).map_err(|e| Failure::Usage(e.into()))?;
    let plan = config
        .validate()
        .with_context(|| format!("validating {}", path.display()))
        .map_err(Failure::Usage)?;

    let report = experiment::run(&plan);
    let dir = PathBuf::from(&plan.config.output_dir);
    report
        .write(&dir)
        .with_context(|| format!("writing reports to {}", dir.display()))
        .map_err(Failure::Usage)?;
    for o in &report.outcomes {
        println!("{:<12} {}", o.check.as_str(), if o.passed { "PASS" } else { "FAIL" });
        if let Some(err) = o.results.get("error") {
            println!("  error: {}", err.as_str().unwrap_or_default());
        }
    }
    println!("reports written to {}", dir.display());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

//! `emdk` — scenario-driven command line for the electromagnetic media
//! toolkit: observer decompositions, stress-energy-momentum reports, the
//! Post invariant, intrinsic magneto-electric classification, the
//! variational identity check and the conformance self-test.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical failure
//! (undecided classification, a residual above threshold with `--strict`,
//! or a failed self-test).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use emdk_cli::report::Report;
use emdk_cli::runner::{self, run_scenario, selftest_result, RunOptions};
use emdk_cli::scenario::{Scenario, Task};
use emdk_core::conformance::ConventionOverride;

#[derive(Parser)]
#[command(name = "emdk", version, about = "electromagnetic media toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonFlags {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the random draws of the self-test and the variation check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fail (exit 3) when a residual exceeds its threshold.
    #[arg(long)]
    strict: bool,
    /// Central-difference step for the variation check.
    #[arg(long, default_value_t = emdk_core::variation::DEFAULT_FD_STEP)]
    fd_step: f64,
    /// Relative tolerance deciding NOT_INTRINSIC in the classifier.
    #[arg(long, default_value_t = 1e-10)]
    tol_classify: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scenario file and emit a JSON report.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Classify the scenario's medium only.
    Classify {
        scenario: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run the conformance self-test: identity suite, round trips and one
    /// variational check.
    Selftest {
        #[command(flatten)]
        flags: CommonFlags,
        /// Deliberately flip the orientation convention inside the checks;
        /// the self-test must then fail.
        #[arg(long)]
        debug_flip_orientation: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Run { scenario, flags } => {
            let scenario = load_scenario(&scenario)?;
            execute(&scenario, &flags)
        }
        Command::Classify { scenario, flags } => {
            let mut scenario = load_scenario(&scenario)?;
            scenario.tasks = vec![Task::Classify];
            execute(&scenario, &flags)
        }
        Command::Selftest {
            flags,
            debug_flip_orientation,
        } => {
            let opts = options(&flags);
            let flip = if debug_flip_orientation {
                ConventionOverride::FlippedOrientation
            } else {
                ConventionOverride::None
            };
            let mut failures = Vec::new();
            let result = selftest_result(opts.seed, 500, flip, &mut failures);
            let report = Report {
                provenance: runner::provenance(&opts),
                results: vec![result],
            };
            emit(&report, &flags)?;
            Ok(exit_for(&failures))
        }
    }
}

fn options(flags: &CommonFlags) -> RunOptions {
    RunOptions {
        seed: flags.seed,
        strict: flags.strict,
        fd_step: flags.fd_step,
        tol_classify: flags.tol_classify,
    }
}

fn load_scenario(path: &PathBuf) -> Result<Scenario, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Scenario::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(scenario: &Scenario, flags: &CommonFlags) -> Result<ExitCode, String> {
    let opts = options(flags);
    let outcome = run_scenario(scenario, &opts).map_err(|e| format!("{e}"))?;
    emit(&outcome.report, flags)?;
    Ok(exit_for(&outcome.numerical_failures))
}

fn emit(report: &Report, flags: &CommonFlags) -> Result<(), String> {
    let text = report.to_json();
    match &flags.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_for(failures: &[String]) -> ExitCode {
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in failures {
            eprintln!("numerical failure: {f}");
        }
        ExitCode::from(3)
    }
}

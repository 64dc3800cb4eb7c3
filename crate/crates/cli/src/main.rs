//! `grpart`: classify subsets, build certified partitions, run the suite.

mod classify;
mod config;
mod partition;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grpart::Error;

/// Exit code for usage, parse and descriptor errors. Verdicts use 0, 1, 2.
pub const ERROR_EXIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "grpart", version, about = "Large, thick, small and thin subsets of groups, checked on finite windows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a size property of a subset on a window.
    Classify(classify::ClassifyArgs),
    /// Build a partition and certify its cells.
    Partition(partition::PartitionArgs),
    /// Re-verify a saved partition, or run the acceptance suite.
    Verify(verify::VerifyArgs),
}

/// What a subcommand produced: a JSON document and the exit code it implies.
pub struct Report {
    pub json: serde_json::Value,
    pub exit: u8,
}

fn run(cli: Cli) -> Result<(Report, Option<std::path::PathBuf>), Error> {
    match cli.command {
        Command::Classify(a) => Ok((classify::run(&a)?, a.run.out.clone())),
        Command::Partition(a) => Ok((partition::run(&a)?, a.run.out.clone())),
        Command::Verify(a) => Ok((verify::run(&a)?, a.run.out.clone())),
    }
}

fn emit(report: &Report, out: Option<&std::path::Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(&report.json).expect("reports serialize");
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ERROR_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(cli).and_then(|(report, out)| emit(&report, out.as_deref()).map(|_| report.exit));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}

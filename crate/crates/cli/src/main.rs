//! `dzeta`: builders, oracle checks, golden examples and sweeps from the
//! command line. Exit status is 0 on success, 1 when a mathematical check
//! fails and 2 for usage or runtime errors.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn run(cli: Cli) -> commands::Outcome {
    let out = &cli.out;
    match cli.command {
        Command::Build { level, weights, part } => commands::build(level, weights.list(), part, out),
        Command::OracleCheck { level, weights, trace } => commands::oracle_check(level, weights.list(), trace, out),
        Command::VerifyPaper { only, inject_fault } => commands::verify_paper(only.as_deref(), inject_fault, out),
        Command::Spectral { sweep } => commands::spectral(&sweep.levels, sweep.list(40), out),
        Command::Conjectures { sweep } => commands::conjectures(&sweep.levels, sweep.list(50), out),
        Command::Wspace { level, weight, sign } => commands::wspace(level, weight, sign, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

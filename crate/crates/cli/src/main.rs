//! Command-line front end for the spline signal engine.
//!
//! Exit statuses: 0 on success, 2 for flag errors, 3 for file parse
//! errors, 4 for shape errors, 5 for fixed-point range errors, 6 for I/O
//! failures, and 1 for anything else.

mod commands;
mod config;
mod csvio;
mod errors;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Command, CommonArgs};

/// Cubic spline signal approximation: a floating-point reference, a
/// fixed-point datapath simulation, accuracy and cycle comparisons
/// against a classical cubic baseline, and ROM export.
#[derive(Parser, Debug)]
#[command(name = "splinedsp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: SubCommand,
}

#[derive(Subcommand, Debug)]
enum SubCommand {
    /// Tabulate the cubic basis function as CSV.
    Basis(CommonArgs),
    /// Approximate a signal and tabulate spline values and errors.
    Approx(CommonArgs),
    /// Run the fixed-point datapath against the float reference.
    Simulate(CommonArgs),
    /// Report error bounds, measured errors, and cycle counts.
    Compare(CommonArgs),
    /// Export the four ROM subsections as a hex image.
    Rom(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        SubCommand::Basis(args) => (Command::Basis, args),
        SubCommand::Approx(args) => (Command::Approx, args),
        SubCommand::Simulate(args) => (Command::Simulate, args),
        SubCommand::Compare(args) => (Command::Compare, args),
        SubCommand::Rom(args) => (Command::Rom, args),
    };
    match config::resolve(command, args).and_then(|config| commands::run(&config)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

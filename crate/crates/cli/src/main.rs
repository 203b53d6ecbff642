//! `sumset`: verify sumset inequalities on concrete instances, generate the
//! extremal family and the random corpus, and inspect hypercube graphs.

mod commands;
mod error;
mod instance;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{corpus, extremal, mu, partition, sqcomm, verify};

#[derive(Parser)]
#[command(name = "sumset", version, about = "Exact sumset and magnification checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run inequality checks on an instance and write a report.
    Verify(verify::Args),
    /// Build the extremal instance in Z_b^k, optionally lifted.
    Extremal(extremal::Args),
    /// Run the removed-component partition and print its trace.
    Partition(partition::Args),
    /// Compute a magnification ratio.
    Mu(mu::Args),
    /// Decide square commutativity of an addition, derived or file graph.
    Sqcomm(sqcomm::Args),
    /// Write the seeded random instance corpus.
    Corpus(corpus::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Extremal(a) => extremal::run(a),
        Command::Partition(a) => partition::run(a),
        Command::Mu(a) => mu::run(a),
        Command::Sqcomm(a) => sqcomm::run(a),
        Command::Corpus(a) => corpus::run(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.hint() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

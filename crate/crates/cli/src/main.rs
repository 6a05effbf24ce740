//! `ptg`: solve, verify, fuzz and benchmark one-clock priced timed games.

mod bench;
mod fuzz;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ptg",
    version,
    about = "Exact solver for one-clock priced timed games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game file and print the result document.
    Solve {
        /// Game description (JSON).
        file: PathBuf,
        /// Write the result document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a CSV segment table of the value functions here.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Check the result against the independent oracles.
        #[arg(long)]
        verify: bool,
        /// Include wall-clock time in the result document.
        #[arg(long)]
        timings: bool,
    },
    /// Cross-check solvers and oracles on random games.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Number of states per game.
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Time the solvers on a family of games.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of states (branches for `automata`).
        #[arg(long, default_value_t = 20)]
        size: usize,
        #[arg(long, default_value_t = 5)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// Random reachability timed games (rate 1, cost 0).
    Reach,
    /// One-player staircase games with `size - 1` event points.
    Automata,
    /// Random simple timed games.
    Random,
}

/// How a command ended, mapped to the process exit status.
pub enum Outcome {
    Ok,
    /// Exit status 1.
    VerificationFailed,
    /// Exit status 2.
    InputError(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            file,
            out,
            plot,
            verify,
            timings,
        } => solve::run(&file, out.as_deref(), plot.as_deref(), verify, timings),
        Command::Fuzz { seed, count, size } => fuzz::run(seed, count, size),
        Command::Bench {
            family,
            size,
            count,
            seed,
        } => bench::run(family, size, count, seed),
    };
    match outcome {
        Outcome::Ok => ExitCode::SUCCESS,
        Outcome::VerificationFailed => ExitCode::from(1),
        Outcome::InputError(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

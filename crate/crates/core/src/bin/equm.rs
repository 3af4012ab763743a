use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use equm::cli::{run_text, Command, Options};
use equm::postulates::{DEFAULT_DENOMINATOR_BOUND, DEFAULT_GRID};

#[derive(Parser)]
#[command(
    name = "equm",
    version,
    about = "Expected qualitative utility over nonstandard utilities"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Compare the lotteries named in each `compare` line
    Compare(Common),
    /// List lotteries from best to worst, grouping indifferent ones
    Rank(Common),
    /// Check the postulates on each `check` triple
    CheckPostulates(Common),
    /// Print the problem with its canonical utilities
    Canonicalize(Common),
    /// Recover the subjective probabilities behind the declared acts
    Subjective(Common),
    /// Compare lotteries under the maximin model of the declared outcomes
    MaximinDemo(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    file: PathBuf,
    /// Grid weights are k/GRID for 0 < k < GRID
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: u32,
    #[arg(long, default_value_t = DEFAULT_DENOMINATOR_BOUND)]
    denominator_bound: u32,
}

fn main() -> ExitCode {
    let (command, common) = match Cli::parse().command {
        Sub::Compare(c) => (Command::Compare, c),
        Sub::Rank(c) => (Command::Rank, c),
        Sub::CheckPostulates(c) => (Command::CheckPostulates, c),
        Sub::Canonicalize(c) => (Command::Canonicalize, c),
        Sub::Subjective(c) => (Command::Subjective, c),
        Sub::MaximinDemo(c) => (Command::MaximinDemo, c),
    };
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", common.file.display());
            return ExitCode::from(2);
        }
    };
    let options = Options {
        grid: common.grid,
        denominator_bound: common.denominator_bound,
    };
    let result = run_text(command, &text, &options);
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    ExitCode::from(result.exit_code as u8)
}

//! Command-line surface for the report evaluation framework.
//!
//! Exit codes: 0 on success, 2 for unusable input or configuration
//! (unreadable files, missing manifest, empty corpus, bad flags), 3 when the
//! judge backend keeps failing after retries — in that case any artifacts
//! already produced stay on disk and the run manifest flags the failures.

mod commands;
mod config;
mod errors;
mod manifest;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "report-judge",
    version,
    about = "Evaluate long-form research reports via logic-tree extraction and rubric scoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate reports end to end and write scorecards plus a leaderboard.
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Extract a single report's logic tree as canonical JSON.
    Extract(commands::extract::ExtractArgs),
    /// Generate a synthetic (report, ground-truth tree) corpus.
    GenPairs(commands::gen_pairs::GenPairsArgs),
    /// Measure extraction accuracy against a corpus's ground truth.
    ValidateExtraction(commands::validate::ValidateArgs),
    /// Aggregate dimension scores into a ranked leaderboard.
    Leaderboard(commands::leaderboard::LeaderboardArgs),
    /// Question-set utilities.
    Questions(commands::questions::QuestionsArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Extract(args) => commands::extract::run(args),
        Command::GenPairs(args) => commands::gen_pairs::run(args),
        Command::ValidateExtraction(args) => commands::validate::run(args),
        Command::Leaderboard(args) => commands::leaderboard::run(args),
        Command::Questions(args) => commands::questions::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {:#}", err.source());
            ExitCode::from(err.exit_code())
        }
    }
}

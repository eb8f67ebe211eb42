//! `questions`: utilities for benchmark question sets — coverage checking
//! against the category taxonomy, and dumping the built-in starter set.

use std::path::PathBuf;

use clap::{Args, Subcommand};

use report_judge::dataset::{
    builtin_questions, coverage_report, load_questions, serialize_questions, TaskCategory,
    QUESTIONS_PER_CORE_CATEGORY,
};

use crate::errors::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct QuestionsArgs {
    #[command(subcommand)]
    pub command: QuestionsCommand,
}

#[derive(Debug, Subcommand)]
pub enum QuestionsCommand {
    /// Load a question file and report category coverage.
    Check {
        /// Line-delimited JSON question file.
        file: PathBuf,

        /// Exit with an error when any core category has fewer than the
        /// required number of questions.
        #[arg(long)]
        require_complete: bool,
    },
    /// Print the built-in starter questions (one exemplar per core
    /// category) as a question file.
    Seed {
        /// Write the questions here instead of stdout.
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
}

pub fn run(args: QuestionsArgs) -> CliResult<()> {
    match args.command {
        QuestionsCommand::Check {
            file,
            require_complete,
        } => check(&file, require_complete),
        QuestionsCommand::Seed { out } => {
            super::emit(out.as_deref(), &serialize_questions(&builtin_questions()))
        }
    }
}

fn check(file: &std::path::Path, require_complete: bool) -> CliResult<()> {
    let questions = load_questions(file).map_err(CliError::input)?;
    let coverage = coverage_report(&questions);

    println!("{} question(s) in {}", questions.len(), file.display());
    println!();
    println!("| Category | Questions | Core |");
    println!("| --- | ---: | :---: |");
    for category in TaskCategory::ALL {
        println!(
            "| {} | {} | {} |",
            category.name(),
            coverage.counts[&category],
            if category.is_core() { "yes" } else { "" },
        );
    }
    println!();
    if coverage.complete {
        println!(
            "complete: every core category has at least {QUESTIONS_PER_CORE_CATEGORY} questions"
        );
        Ok(())
    } else {
        let missing: Vec<String> = TaskCategory::core_categories()
            .filter(|c| coverage.counts[c] < QUESTIONS_PER_CORE_CATEGORY)
            .map(|c| format!("{} ({})", c.name(), coverage.counts[&c]))
            .collect();
        println!(
            "incomplete: core categories below {QUESTIONS_PER_CORE_CATEGORY}: {}",
            missing.join(", ")
        );
        if require_complete {
            Err(CliError::Input(anyhow::anyhow!(
                "question set incomplete: {}",
                missing.join(", ")
            )))
        } else {
            Ok(())
        }
    }
}

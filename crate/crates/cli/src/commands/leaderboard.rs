//! `leaderboard`: collects scorecards — or bare dimension-score maps, which
//! are aggregated on the spot — and renders the ranked table.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use serde::Deserialize;

use report_judge::dimension::Dimension;
use report_judge::scorecard::{aggregate, build_leaderboard, Scorecard};

use crate::config::{CommonArgs, OutputFormat};
use crate::errors::{input_io, CliError, CliResult};

#[derive(Debug, Args)]
pub struct LeaderboardArgs {
    /// Score files: either full scorecards (from `evaluate`) or bare
    /// `{subject, scores}` maps to aggregate with the configured weights.
    #[arg(required = true)]
    pub scores: Vec<PathBuf>,

    /// Write the leaderboard here instead of stdout.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub common: CommonArgs,
}

/// The two accepted input shapes. A full scorecard carries its final score;
/// a bare map gets aggregated here.
#[derive(Deserialize)]
#[serde(untagged)]
enum ScoreInput {
    Card(Scorecard),
    Bare {
        subject: String,
        scores: BTreeMap<Dimension, f64>,
    },
}

pub fn run(args: LeaderboardArgs) -> CliResult<()> {
    let settings = args.common.resolve()?;

    let mut cards = Vec::with_capacity(args.scores.len());
    for path in &args.scores {
        let text = input_io(std::fs::read_to_string(path), || {
            format!("reading scores file {}", path.display())
        })?;
        let parsed: ScoreInput = serde_json::from_str(&text).map_err(|err| {
            CliError::Input(
                anyhow::Error::new(err).context(format!("parsing {}", path.display())),
            )
        })?;
        let card = match parsed {
            ScoreInput::Card(card) => card,
            ScoreInput::Bare { subject, scores } => {
                aggregate(&subject, &scores, &settings.weights).map_err(|err| {
                    CliError::Input(
                        anyhow::Error::new(err).context(format!("aggregating {}", path.display())),
                    )
                })?
            }
        };
        cards.push(card);
    }

    let board = build_leaderboard(cards).map_err(CliError::input)?;
    let rendered = match settings.format {
        OutputFormat::Csv => board.to_csv(),
        OutputFormat::Md => board.to_markdown(),
        OutputFormat::Json => {
            let mut body = serde_json::to_string_pretty(&board).expect("leaderboard serializes");
            body.push('\n');
            body
        }
    };
    super::emit(args.out.as_deref(), &rendered)
}

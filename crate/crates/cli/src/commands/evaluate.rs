//! `evaluate`: the full pipeline over one or more report files — extraction,
//! support verdicts when the backend offers them, rule metrics, rubric
//! scores, aggregation — ending in per-report scorecards, a leaderboard, and
//! a run manifest.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Mutex;

use clap::Args;

use report_judge::dimension::{Dimension, RubricDimension};
use report_judge::judge::{
    GatewayError, JudgeGateway, EXTRACTION_PROMPT_VERSION, RUBRIC_PROMPT_VERSION,
    SUPPORT_PROMPT_VERSION,
};
use report_judge::logic_tree::compute_stats;
use report_judge::report::{average_words_per_subtitle, parse_report};
use report_judge::rule_metrics::{
    density_score, depth_score, paragraph_richness, width_score, MetricConstants,
};
use report_judge::scorecard::{aggregate, build_leaderboard, DimensionWeights, Provenance, Scorecard};

use crate::config::CommonArgs;
use crate::errors::{input_io, CliError, CliResult};
use crate::manifest::{sha256_hex, FailureNote, InputDigest, RunManifest};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Report files (markdown). Each file stem names its subject.
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,

    /// Directory receiving scorecards/, leaderboard files, and the manifest.
    #[arg(long, short = 'o')]
    pub out: PathBuf,

    #[command(flatten)]
    pub common: CommonArgs,
}

pub fn run(args: EvaluateArgs) -> CliResult<()> {
    let settings = args.common.resolve()?;
    let gateway = settings.gateway()?;

    // Pre-flight: evaluation needs extraction and rubric scoring. Support
    // verdicts are optional and used when declared.
    let caps = gateway.capabilities();
    if !caps.extraction || !caps.rubric {
        return Err(CliError::Input(anyhow::anyhow!(
            "backend `{}` cannot evaluate: it lacks {}",
            gateway.backend_identity(),
            if caps.extraction {
                "rubric scoring"
            } else {
                "tree extraction"
            },
        )));
    }

    // Read every report up front so unreadable input fails the whole run
    // before any artifact exists.
    let mut subjects: Vec<(String, String)> = Vec::new();
    let mut inputs = Vec::new();
    for path in &args.reports {
        let text = input_io(std::fs::read_to_string(path), || {
            format!("reading report {}", path.display())
        })?;
        let subject = path
            .file_stem()
            .and_then(|stem| stem.to_str())
            .map(str::to_string)
            .ok_or_else(|| {
                CliError::Input(anyhow::anyhow!(
                    "cannot derive a subject name from {}",
                    path.display()
                ))
            })?;
        inputs.push(InputDigest {
            path: path.clone(),
            sha256: sha256_hex(text.as_bytes()),
        });
        subjects.push((subject, text));
    }
    let mut seen = BTreeSet::new();
    for (subject, _) in &subjects {
        if !seen.insert(subject.clone()) {
            return Err(CliError::Input(anyhow::anyhow!(
                "duplicate subject {subject:?}: two inputs share a file stem"
            )));
        }
    }

    input_io(std::fs::create_dir_all(args.out.join("scorecards")), || {
        format!("creating output directory {}", args.out.display())
    })?;

    let results = run_bounded(&gateway, &settings.weights, &subjects, settings.parallel);

    let mut manifest = RunManifest::new(
        gateway.backend_identity(),
        settings.weights.clone(),
        inputs,
    );
    let mut cards = Vec::new();
    let mut backend_failures = 0usize;
    let mut input_failures = 0usize;
    for (index, result) in results.into_iter().enumerate() {
        let (subject, _) = &subjects[index];
        match result {
            Ok(card) => {
                let relative = format!("scorecards/{subject}.json");
                let mut body = serde_json::to_string_pretty(&card).expect("scorecard serializes");
                body.push('\n');
                input_io(std::fs::write(args.out.join(&relative), body), || {
                    format!("writing scorecard for {subject}")
                })?;
                manifest.outputs.push(relative);
                cards.push(card);
            }
            Err(err) => {
                match err {
                    GatewayError::Backend { .. } | GatewayError::SchemaInvalid { .. } => {
                        backend_failures += 1
                    }
                    _ => input_failures += 1,
                }
                log::error!("{subject}: {err}");
                manifest.failures.push(FailureNote {
                    input: args.reports[index].clone(),
                    error: err.to_string(),
                });
            }
        }
    }

    if !cards.is_empty() {
        let board = build_leaderboard(cards).map_err(CliError::input)?;
        input_io(std::fs::write(args.out.join("leaderboard.csv"), board.to_csv()), || {
            "writing leaderboard.csv".to_string()
        })?;
        input_io(std::fs::write(args.out.join("leaderboard.md"), board.to_markdown()), || {
            "writing leaderboard.md".to_string()
        })?;
        manifest.outputs.push("leaderboard.csv".to_string());
        manifest.outputs.push("leaderboard.md".to_string());
    }

    let evaluated = subjects.len() - backend_failures - input_failures;
    input_io(manifest.write(&args.out).map(|_| ()), || {
        "writing manifest.json".to_string()
    })?;
    println!(
        "evaluated {evaluated}/{} report(s); artifacts in {}",
        subjects.len(),
        args.out.display()
    );

    if backend_failures > 0 {
        Err(CliError::Backend(anyhow::anyhow!(
            "{backend_failures} report(s) failed at the backend; partial artifacts are flagged in manifest.json"
        )))
    } else if input_failures > 0 {
        Err(CliError::Input(anyhow::anyhow!(
            "{input_failures} report(s) could not be evaluated; see manifest.json"
        )))
    } else {
        Ok(())
    }
}

/// Evaluates all subjects with at most `parallel` worker threads, preserving
/// input order in the returned results.
fn run_bounded(
    gateway: &JudgeGateway,
    weights: &DimensionWeights,
    subjects: &[(String, String)],
    parallel: usize,
) -> Vec<Result<Scorecard, GatewayError>> {
    let queue: Mutex<Vec<usize>> = Mutex::new((0..subjects.len()).rev().collect());
    let slots: Vec<Mutex<Option<Result<Scorecard, GatewayError>>>> =
        subjects.iter().map(|_| Mutex::new(None)).collect();
    let workers = parallel.clamp(1, subjects.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = queue.lock().expect("queue lock").pop();
                let Some(index) = index else { break };
                let (subject, text) = &subjects[index];
                let outcome = evaluate_one(gateway, weights, subject, text);
                *slots[index].lock().expect("slot lock") = Some(outcome);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("slot lock")
                .expect("every queued index was processed")
        })
        .collect()
}

/// One report through the whole pipeline.
fn evaluate_one(
    gateway: &JudgeGateway,
    weights: &DimensionWeights,
    subject: &str,
    markdown: &str,
) -> Result<Scorecard, GatewayError> {
    let report = parse_report(markdown);
    let extraction = gateway.extract_tree(&report)?;
    let support_eval = gateway.capabilities().support_eval;
    let tree = if support_eval {
        gateway.evaluate_support(&extraction.tree)?
    } else {
        extraction.tree.clone()
    };
    let stats = compute_stats(&tree).expect("gateway output is validated");

    let constants = MetricConstants::default();
    let mut scores: BTreeMap<Dimension, f64> = BTreeMap::new();
    scores.insert(Dimension::AnalysisWidth, width_score(&stats, &constants));
    scores.insert(
        Dimension::AnalysisDepth,
        depth_score(&stats, &constants).combined,
    );
    scores.insert(
        Dimension::InformationDensity,
        density_score(&stats, &constants).combined,
    );
    scores.insert(
        Dimension::ParagraphRichness,
        paragraph_richness(average_words_per_subtitle(&report)),
    );
    for rubric in RubricDimension::ALL {
        scores.insert(
            rubric.dimension(),
            gateway.score_rubric(&report, rubric)?.score,
        );
    }

    let mut card =
        aggregate(subject, &scores, weights).expect("all ten dimensions were inserted");
    let mut prompt_versions = BTreeMap::new();
    prompt_versions.insert("extraction".to_string(), EXTRACTION_PROMPT_VERSION.to_string());
    prompt_versions.insert("rubric".to_string(), RUBRIC_PROMPT_VERSION.to_string());
    if support_eval {
        prompt_versions.insert(
            "support_eval".to_string(),
            SUPPORT_PROMPT_VERSION.to_string(),
        );
    }
    card.provenance = Provenance {
        backend: Some(extraction.backend),
        prompt_versions,
        tree_stats: Some(stats),
    };
    Ok(card)
}

//! `validate-extraction`: runs the configured backend's extractor over every
//! report in a corpus and measures agreement with the stored ground truth,
//! binned by tree size.

use std::path::PathBuf;

use clap::Args;

use report_judge::judge::GatewayError;
use report_judge::report::parse_report;
use report_judge::validation::{run_validation, ValidationPair};

use crate::config::{CommonArgs, OutputFormat};
use crate::errors::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Corpus directory (as produced by gen-pairs).
    pub corpus: PathBuf,

    /// Write the report here instead of stdout.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub common: CommonArgs,
}

pub fn run(args: ValidateArgs) -> CliResult<()> {
    let settings = args.common.resolve()?;
    let gateway = settings.gateway()?;

    let pairs = report_judge::simulator::load_pair_corpus(&args.corpus).map_err(CliError::input)?;
    let mut validation_pairs = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let report = parse_report(&pair.report_markdown);
        let extraction = gateway.extract_tree(&report).map_err(|err| {
            annotate_pair_error(err, &pair.dir)
        })?;
        let vp = ValidationPair::from_trees(
            &extraction.tree,
            &pair.gt_tree,
            pair.report_word_count,
        )
        .map_err(CliError::input)?;
        validation_pairs.push(vp);
    }

    let report = run_validation(&validation_pairs).map_err(CliError::input)?;
    let rendered = match settings.format {
        OutputFormat::Json => {
            let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
            body.push('\n');
            body
        }
        // The binned table is inherently two-dimensional; CSV callers get
        // the JSON form too rather than a lossy flattening.
        OutputFormat::Md => report.to_markdown(),
        OutputFormat::Csv => {
            log::warn!("validate-extraction has no CSV form; emitting JSON");
            let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
            body.push('\n');
            body
        }
    };
    super::emit(args.out.as_deref(), &rendered)
}

fn annotate_pair_error(err: GatewayError, pair_dir: &str) -> CliError {
    let wrapped = anyhow::Error::new(err).context(format!("extracting pair {pair_dir}"));
    match wrapped.downcast_ref::<GatewayError>() {
        Some(GatewayError::Backend { .. }) | Some(GatewayError::SchemaInvalid { .. }) => {
            CliError::Backend(wrapped)
        }
        _ => CliError::Input(wrapped),
    }
}

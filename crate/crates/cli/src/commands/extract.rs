//! `extract`: one report in, its canonical logic-tree document out.

use std::path::PathBuf;

use clap::Args;

use report_judge::logic_tree::serialize_tree;
use report_judge::report::parse_report;

use crate::config::CommonArgs;
use crate::errors::{input_io, CliError, CliResult};

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Report file (markdown).
    pub report: PathBuf,

    /// Write the tree document here instead of stdout.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub common: CommonArgs,
}

pub fn run(args: ExtractArgs) -> CliResult<()> {
    let settings = args.common.resolve()?;
    let gateway = settings.gateway()?;
    let text = input_io(std::fs::read_to_string(&args.report), || {
        format!("reading report {}", args.report.display())
    })?;
    let result = gateway
        .extract_tree(&parse_report(&text))
        .map_err(CliError::from_gateway)?;
    let doc = serialize_tree(&result.tree).expect("gateway output is valid");
    super::emit(args.out.as_deref(), &doc)
}

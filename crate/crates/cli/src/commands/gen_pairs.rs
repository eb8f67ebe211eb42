//! `gen-pairs`: writes a reproducible synthetic corpus of (report,
//! ground-truth tree) pairs for extraction validation.

use std::path::PathBuf;

use clap::Args;

use report_judge::simulator::{write_pair_corpus, CorpusError, GenerationSpec};

use crate::config::CommonArgs;
use crate::errors::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct GenPairsArgs {
    /// Directory the corpus is written into.
    #[arg(long, short = 'o')]
    pub out: PathBuf,

    /// Number of pairs to generate (must be at least 1).
    #[arg(long, short = 'n')]
    pub n: usize,

    /// Topic-tree depth range, inclusive, as LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub depth: Option<(usize, usize)>,

    /// Children per split topic, inclusive, as LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub branching: Option<(usize, usize)>,

    /// Evidence summaries per explored topic, inclusive, as LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub evidence: Option<(usize, usize)>,

    /// Words per evidence paragraph, inclusive, as LO..HI.
    #[arg(long, value_parser = parse_range)]
    pub words: Option<(usize, usize)>,

    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_range(raw: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = raw
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {raw:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound in {raw:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound in {raw:?}"))?;
    Ok((lo, hi))
}

pub fn run(args: GenPairsArgs) -> CliResult<()> {
    let settings = args.common.resolve()?;
    let defaults = GenerationSpec::default();
    let spec = GenerationSpec {
        seed: settings.seed,
        depth_range: args.depth.unwrap_or(defaults.depth_range),
        branching_range: args.branching.unwrap_or(defaults.branching_range),
        evidence_range: args.evidence.unwrap_or(defaults.evidence_range),
        words_range: args.words.unwrap_or(defaults.words_range),
    };
    let manifest = write_pair_corpus(&args.out, &spec, args.n).map_err(classify)?;
    println!(
        "generated {} pair(s) under {} (base seed {})",
        manifest.pair_count,
        args.out.display(),
        manifest.base_seed
    );
    Ok(())
}

fn classify(err: CorpusError) -> CliError {
    // Everything that can go wrong here — zero pairs, an unsatisfiable
    // generation spec, an unwritable directory — is an input problem.
    CliError::input(err)
}

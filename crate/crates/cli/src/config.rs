//! Layered configuration: CLI flags override environment variables, which
//! override the optional config file, which overrides built-in defaults.
//! The remote API key is the exception — it is read from the environment
//! only and has no flag or file form.

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use serde::Deserialize;

use report_judge::judge::{
    JudgeGateway, MockBackend, RemoteBackend, RemoteConfig, ResponseCache, StructuralBackend,
};
use report_judge::scorecard::DimensionWeights;

use crate::errors::{CliError, CliResult};

/// Environment variable fallbacks for the non-secret settings.
const BACKEND_ENV: &str = "REPORT_JUDGE_BACKEND";
const CACHE_DIR_ENV: &str = "REPORT_JUDGE_CACHE_DIR";
const PARALLEL_ENV: &str = "REPORT_JUDGE_PARALLEL";
const SEED_ENV: &str = "REPORT_JUDGE_SEED";
const FORMAT_ENV: &str = "REPORT_JUDGE_FORMAT";
const WEIGHTS_ENV: &str = "REPORT_JUDGE_WEIGHTS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    /// HTTP chat-completions endpoint (credentials from the environment).
    Remote,
    /// Deterministic heading-based extraction; no rubric or support calls.
    Structural,
    /// Offline fixture backend with fixed rubric scores.
    Mock,
}

impl BackendKind {
    fn parse(name: &str) -> anyhow::Result<Self> {
        <Self as ValueEnum>::from_str(name, true)
            .map_err(|_| anyhow::anyhow!("unknown backend {name:?} (remote|structural|mock)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Md,
}

impl OutputFormat {
    fn parse(name: &str) -> anyhow::Result<Self> {
        <Self as ValueEnum>::from_str(name, true)
            .map_err(|_| anyhow::anyhow!("unknown format {name:?} (json|csv|md)"))
    }
}

/// Flags shared by every command that talks to a judge backend or reads the
/// layered configuration.
#[derive(Debug, Clone, clap::Args)]
pub struct CommonArgs {
    /// Judge backend to use.
    #[arg(long, value_enum)]
    pub backend: Option<BackendKind>,

    /// Dimension-weights file (JSON map of dimension key to weight).
    #[arg(long)]
    pub weights: Option<PathBuf>,

    /// Directory for the on-disk response cache.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,

    /// Concurrent per-report evaluations.
    #[arg(long)]
    pub parallel: Option<usize>,

    /// Seed for anything randomized (corpus generation).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output format where a command supports more than one.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Remote endpoint URL (remote backend only).
    #[arg(long)]
    pub endpoint: Option<String>,

    /// Remote model name (remote backend only).
    #[arg(long)]
    pub model: Option<String>,

    /// Config file supplying any of the above (lowest precedence above
    /// defaults).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// The config-file shape: every field optional, same names as the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    backend: Option<String>,
    weights: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    parallel: Option<usize>,
    seed: Option<u64>,
    format: Option<String>,
    endpoint: Option<String>,
    model: Option<String>,
}

/// Fully resolved settings, after all four layers.
#[derive(Debug, Clone)]
pub struct Settings {
    pub backend: BackendKind,
    pub weights: DimensionWeights,
    pub cache_dir: Option<PathBuf>,
    pub parallel: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub endpoint: Option<String>,
    pub model: Option<String>,
}

fn env_string(name: &str) -> Option<String> {
    std::env::var(name).ok().filter(|v| !v.is_empty())
}

impl CommonArgs {
    /// Applies the precedence chain and loads the weights file if any layer
    /// named one.
    pub fn resolve(&self) -> CliResult<Settings> {
        resolve_settings(self).map_err(CliError::Input)
    }
}

fn resolve_settings(args: &CommonArgs) -> anyhow::Result<Settings> {
    let file: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?
        }
        None => FileConfig::default(),
    };

    let backend = match (&args.backend, env_string(BACKEND_ENV), &file.backend) {
        (Some(kind), _, _) => *kind,
        (None, Some(name), _) => BackendKind::parse(&name)?,
        (None, None, Some(name)) => BackendKind::parse(name)?,
        (None, None, None) => BackendKind::Mock,
    };

    let format = match (&args.format, env_string(FORMAT_ENV), &file.format) {
        (Some(fmt), _, _) => *fmt,
        (None, Some(name), _) => OutputFormat::parse(&name)?,
        (None, None, Some(name)) => OutputFormat::parse(name)?,
        (None, None, None) => OutputFormat::Md,
    };

    let parallel = match (args.parallel, env_string(PARALLEL_ENV), file.parallel) {
        (Some(n), _, _) => n,
        (None, Some(raw), _) => raw
            .parse()
            .with_context(|| format!("{PARALLEL_ENV}={raw} is not a count"))?,
        (None, None, Some(n)) => n,
        (None, None, None) => 1,
    };
    anyhow::ensure!(parallel >= 1, "--parallel must be at least 1");

    let seed = match (args.seed, env_string(SEED_ENV), file.seed) {
        (Some(seed), _, _) => seed,
        (None, Some(raw), _) => raw
            .parse()
            .with_context(|| format!("{SEED_ENV}={raw} is not a seed"))?,
        (None, None, Some(seed)) => seed,
        (None, None, None) => 0,
    };

    let cache_dir = args
        .cache_dir
        .clone()
        .or_else(|| env_string(CACHE_DIR_ENV).map(PathBuf::from))
        .or(file.cache_dir);

    let weights_path = args
        .weights
        .clone()
        .or_else(|| env_string(WEIGHTS_ENV).map(PathBuf::from))
        .or(file.weights);
    let weights = match weights_path {
        Some(path) => load_weights(&path)?,
        None => DimensionWeights::default(),
    };

    let endpoint = args.endpoint.clone().or(file.endpoint); // env handled by the backend itself
    let model = args.model.clone().or(file.model);

    Ok(Settings {
        backend,
        weights,
        cache_dir,
        parallel,
        seed,
        format,
        endpoint,
        model,
    })
}

pub fn load_weights(path: &Path) -> anyhow::Result<DimensionWeights> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading weights file {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing weights file {}", path.display()))
}

impl Settings {
    /// Builds the gateway for the chosen backend, attaching the cache when a
    /// directory is configured.
    pub fn gateway(&self) -> CliResult<JudgeGateway> {
        let backend: Box<dyn report_judge::judge::JudgeBackend> = match self.backend {
            BackendKind::Mock => Box::new(MockBackend::new()),
            BackendKind::Structural => Box::new(StructuralBackend),
            BackendKind::Remote => {
                let config =
                    RemoteConfig::resolve(self.endpoint.clone(), self.model.clone())
                        .map_err(CliError::input)?;
                Box::new(RemoteBackend::new(config).map_err(|err| {
                    CliError::Input(anyhow::anyhow!("remote backend setup failed: {err}"))
                })?)
            }
        };
        let mut gateway = JudgeGateway::new(backend);
        if let Some(dir) = &self.cache_dir {
            let cache = ResponseCache::open(dir).map_err(|err| {
                CliError::Input(
                    anyhow::Error::new(err)
                        .context(format!("opening cache directory {}", dir.display())),
                )
            })?;
            gateway = gateway.with_cache(cache);
        }
        Ok(gateway)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare_args() -> CommonArgs {
        CommonArgs {
            backend: None,
            weights: None,
            cache_dir: None,
            parallel: None,
            seed: None,
            format: None,
            endpoint: None,
            model: None,
            config: None,
        }
    }

    #[test]
    fn defaults_apply_when_nothing_is_set() {
        let settings = resolve_settings(&bare_args()).unwrap();
        assert_eq!(settings.backend, BackendKind::Mock);
        assert_eq!(settings.parallel, 1);
        assert_eq!(settings.seed, 0);
        assert_eq!(settings.format, OutputFormat::Md);
        assert!(settings.cache_dir.is_none());
    }

    #[test]
    fn flags_override_the_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let config_path = dir.path().join("config.json");
        std::fs::write(
            &config_path,
            r#"{"backend": "structural", "parallel": 8, "seed": 99}"#,
        )
        .unwrap();
        let args = CommonArgs {
            backend: Some(BackendKind::Mock),
            config: Some(config_path),
            ..bare_args()
        };
        let settings = resolve_settings(&args).unwrap();
        // Flag wins for backend; file fills the rest.
        assert_eq!(settings.backend, BackendKind::Mock);
        assert_eq!(settings.parallel, 8);
        assert_eq!(settings.seed, 99);
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let config_path = dir.path().join("config.json");
        std::fs::write(&config_path, r#"{"api_key": "sk-nope"}"#).unwrap();
        let args = CommonArgs {
            config: Some(config_path),
            ..bare_args()
        };
        // There is deliberately no config-file form for the API key.
        assert!(resolve_settings(&args).is_err());
    }

    #[test]
    fn zero_parallel_is_rejected() {
        let args = CommonArgs {
            parallel: Some(0),
            ..bare_args()
        };
        assert!(resolve_settings(&args).is_err());
    }
}

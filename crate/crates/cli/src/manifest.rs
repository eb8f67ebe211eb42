//! Run manifests: one JSON document per run directory recording what went
//! in, what came out, and under which configuration — enough to audit or
//! reproduce a run without guessing.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use report_judge::judge::{
    EXTRACTION_PROMPT_VERSION, RUBRIC_PROMPT_VERSION, SUPPORT_PROMPT_VERSION,
};
use report_judge::scorecard::DimensionWeights;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// Digest of config plus input digests: identical runs share an id.
    pub run_id: String,
    /// Wall-clock seconds since the Unix epoch when the manifest was written.
    pub timestamp_unix: u64,
    pub config: ConfigSnapshot,
    pub inputs: Vec<InputDigest>,
    /// Paths relative to the run directory, one entry per artifact.
    pub outputs: Vec<String>,
    /// Inputs that produced no artifact, with the error that stopped them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<FailureNote>,
}

#[derive(Debug, Serialize)]
pub struct ConfigSnapshot {
    pub backend: String,
    pub prompt_versions: PromptVersions,
    pub weights: DimensionWeights,
}

#[derive(Debug, Serialize)]
pub struct PromptVersions {
    pub extraction: &'static str,
    pub support_eval: &'static str,
    pub rubric: &'static str,
}

impl Default for PromptVersions {
    fn default() -> Self {
        PromptVersions {
            extraction: EXTRACTION_PROMPT_VERSION,
            support_eval: SUPPORT_PROMPT_VERSION,
            rubric: RUBRIC_PROMPT_VERSION,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct FailureNote {
    pub input: PathBuf,
    pub error: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(
        backend: String,
        weights: DimensionWeights,
        inputs: Vec<InputDigest>,
    ) -> RunManifest {
        let mut hasher = Sha256::new();
        hasher.update(backend.as_bytes());
        hasher.update(serde_json::to_string(&weights).expect("weights serialize"));
        for input in &inputs {
            hasher.update(input.sha256.as_bytes());
        }
        let run_id: String = hasher
            .finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect();
        RunManifest {
            run_id,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config: ConfigSnapshot {
                backend,
                prompt_versions: PromptVersions::default(),
                weights,
            },
            inputs,
            outputs: Vec::new(),
            failures: Vec::new(),
        }
    }

    /// Serializes and writes the manifest as `manifest.json` in `dir`.
    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join("manifest.json");
        let mut body = serde_json::to_string_pretty(self).expect("manifest serializes");
        body.push('\n');
        std::fs::write(&path, body)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_id_depends_on_inputs_and_config_only() {
        let inputs = || {
            vec![InputDigest {
                path: PathBuf::from("a.md"),
                sha256: sha256_hex(b"report body"),
            }]
        };
        let first = RunManifest::new("mock/v1".into(), DimensionWeights::default(), inputs());
        let second = RunManifest::new("mock/v1".into(), DimensionWeights::default(), inputs());
        assert_eq!(first.run_id, second.run_id);

        let other_backend =
            RunManifest::new("structural/v1".into(), DimensionWeights::default(), inputs());
        assert_ne!(first.run_id, other_backend.run_id);
    }

    #[test]
    fn digest_is_the_usual_hex_form() {
        // Well-known SHA-256 of the empty string.
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}

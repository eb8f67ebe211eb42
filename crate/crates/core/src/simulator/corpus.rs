//! Pair corpus layout on disk: one directory per pair holding the report
//! markdown, the canonical ground-truth tree document, and the generation
//! spec that produced them, plus a root manifest listing every pair.
//!
//! Regeneration with the same base spec is byte-identical, so corpora can be
//! diffed and checked into fixtures.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{generate_pair, GenerationSpec, SpecError};
use crate::logic_tree::{deserialize_tree, serialize_tree, DocError, LogicTree};
use crate::report::count_words;

pub const MANIFEST_FILE: &str = "manifest.json";
const REPORT_FILE: &str = "report.md";
const TREE_FILE: &str = "gt_tree.json";
const SPEC_FILE: &str = "spec.json";

/// Root index of a corpus directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub pair_count: usize,
    pub base_seed: u64,
    pub entries: Vec<ManifestEntry>,
}

/// One pair's location and provenance inside the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub dir: String,
    pub seed: u64,
    pub report_file: String,
    pub tree_file: String,
    pub spec_file: String,
}

/// Anything that can go wrong writing or reading a corpus.
#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus must contain at least one pair")]
    NoPairs,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("no corpus manifest at {0}")]
    MissingManifest(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Tree {
        path: PathBuf,
        #[source]
        source: DocError,
    },
}

fn write_file(path: &Path, contents: &str) -> Result<(), CorpusError> {
    fs::write(path, contents).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_file(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Generates `n` pairs under `out_dir`, seeding pair *i* with
/// `base.seed + i` so the corpus spans many tree shapes while staying fully
/// reproducible. Existing files are overwritten.
pub fn write_pair_corpus(
    out_dir: &Path,
    base: &GenerationSpec,
    n: usize,
) -> Result<CorpusManifest, CorpusError> {
    if n == 0 {
        return Err(CorpusError::NoPairs);
    }
    base.validate()?;
    fs::create_dir_all(out_dir).map_err(|source| CorpusError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;

    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let spec = GenerationSpec {
            seed: base.seed.wrapping_add(i as u64),
            ..*base
        };
        let pair = generate_pair(&spec)?;
        let dir_name = format!("pair-{:04}", i + 1);
        let pair_dir = out_dir.join(&dir_name);
        fs::create_dir_all(&pair_dir).map_err(|source| CorpusError::Io {
            path: pair_dir.clone(),
            source,
        })?;

        write_file(&pair_dir.join(REPORT_FILE), &pair.report.raw_text)?;
        let tree_doc = serialize_tree(&pair.gt_tree)
            .expect("simulator output always serializes");
        write_file(&pair_dir.join(TREE_FILE), &tree_doc)?;
        let mut spec_doc = serde_json::to_string_pretty(&spec)
            .expect("generation spec always serializes");
        spec_doc.push('\n');
        write_file(&pair_dir.join(SPEC_FILE), &spec_doc)?;

        entries.push(ManifestEntry {
            dir: dir_name,
            seed: spec.seed,
            report_file: REPORT_FILE.to_string(),
            tree_file: TREE_FILE.to_string(),
            spec_file: SPEC_FILE.to_string(),
        });
    }

    let manifest = CorpusManifest {
        pair_count: n,
        base_seed: base.seed,
        entries,
    };
    let mut manifest_doc =
        serde_json::to_string_pretty(&manifest).expect("manifest always serializes");
    manifest_doc.push('\n');
    write_file(&out_dir.join(MANIFEST_FILE), &manifest_doc)?;
    Ok(manifest)
}

/// One pair as read back from disk. `report_word_count` is recomputed from
/// the markdown source, not trusted from any stored value.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedPair {
    pub dir: String,
    pub spec: GenerationSpec,
    pub report_markdown: String,
    pub gt_tree: LogicTree,
    pub report_word_count: usize,
}

/// Reads a corpus back via its manifest.
pub fn load_pair_corpus(dir: &Path) -> Result<Vec<LoadedPair>, CorpusError> {
    let manifest_path = dir.join(MANIFEST_FILE);
    if !manifest_path.is_file() {
        return Err(CorpusError::MissingManifest(manifest_path));
    }
    let manifest: CorpusManifest = serde_json::from_str(&read_file(&manifest_path)?)
        .map_err(|source| CorpusError::Parse {
            path: manifest_path.clone(),
            source,
        })?;

    let mut pairs = Vec::with_capacity(manifest.entries.len());
    for entry in &manifest.entries {
        let pair_dir = dir.join(&entry.dir);
        let report_markdown = read_file(&pair_dir.join(&entry.report_file))?;
        let tree_path = pair_dir.join(&entry.tree_file);
        let gt_tree = deserialize_tree(&read_file(&tree_path)?).map_err(|source| {
            CorpusError::Tree {
                path: tree_path.clone(),
                source,
            }
        })?;
        let spec_path = pair_dir.join(&entry.spec_file);
        let spec: GenerationSpec = serde_json::from_str(&read_file(&spec_path)?)
            .map_err(|source| CorpusError::Parse {
                path: spec_path.clone(),
                source,
            })?;
        let report_word_count = count_words(&report_markdown);
        pairs.push(LoadedPair {
            dir: entry.dir.clone(),
            spec,
            report_markdown,
            gt_tree,
            report_word_count,
        });
    }
    Ok(pairs)
}

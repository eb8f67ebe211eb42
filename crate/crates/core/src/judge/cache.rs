//! On-disk response cache, content-addressed by a digest of (backend
//! identity, prompt version, rendered prompt). Entries are written once via
//! temp-file-plus-rename, so concurrent readers only ever see complete
//! files, and a key's stored response never changes after first write —
//! cache hits are byte-identical to the original response.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One cached response, wrapped in an envelope so truncated or mangled
/// files are detectable as corruption rather than served as responses.
#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    response: String,
}

#[derive(Debug, Clone)]
pub struct ResponseCache {
    dir: PathBuf,
}

impl ResponseCache {
    /// Opens (creating if needed) a cache rooted at `dir`.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResponseCache { dir })
    }

    /// Deterministic cache key. Identity, version and prompt are length-
    /// prefixed before hashing so no two distinct triples collide by
    /// concatenation.
    pub fn key(identity: &str, prompt_version: &str, prompt: &str) -> String {
        let mut hasher = Sha256::new();
        for part in [identity, prompt_version, prompt] {
            hasher.update(part.len().to_le_bytes());
            hasher.update(part.as_bytes());
        }
        format!("{:x}", hasher.finalize())
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Returns the stored response, or None on a miss. A corrupt entry is
    /// reported and treated as a miss rather than failing the call.
    pub fn get(&self, key: &str) -> Option<String> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(bytes) => bytes,
            Err(err) if err.kind() == io::ErrorKind::NotFound => return None,
            Err(err) => {
                log::warn!("cache read failed, bypassing {}: {err}", path.display());
                return None;
            }
        };
        match serde_json::from_slice::<CacheEntry>(&bytes) {
            Ok(entry) if entry.key == key => Some(entry.response),
            Ok(_) => {
                log::warn!("cache entry key mismatch, bypassing {}", path.display());
                None
            }
            Err(err) => {
                log::warn!("corrupt cache entry, bypassing {}: {err}", path.display());
                None
            }
        }
    }

    /// Stores a response under `key` unless one is already present
    /// (write-once). The write is atomic: temp file in the same directory,
    /// then rename.
    pub fn put(&self, key: &str, response: &str) -> io::Result<()> {
        let path = self.path_for(key);
        if path.exists() {
            return Ok(());
        }
        let entry = CacheEntry {
            key: key.to_string(),
            response: response.to_string(),
        };
        let body = serde_json::to_vec(&entry).expect("cache entry always serializes");
        let tmp = self.dir.join(format!(
            "{key}.tmp.{}.{}",
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.subsec_nanos())
                .unwrap_or(0)
        ));
        fs::write(&tmp, &body)?;
        if path.exists() {
            // Another writer won the race; keep its entry.
            let _ = fs::remove_file(&tmp);
            return Ok(());
        }
        fs::rename(&tmp, &path)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

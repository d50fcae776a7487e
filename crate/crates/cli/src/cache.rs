//! Content-addressed, write-once store of JSON results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What is stored per key: the rendered result and whether it was certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub certified: bool,
    pub result: Value,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    /// `sha256` of the canonical JSON of `(type, command, input)`.
    pub fn key(ty: &str, command: &str, input: &Value) -> String {
        let canonical = serde_json::json!({
            "command": command,
            "input": input,
            "type": ty,
            "version": env!("CARGO_PKG_VERSION"),
        });
        let bytes = serde_json::to_vec(&canonical).expect("json value serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Returns the stored entry, or `None` on a miss. A corrupt entry is
    /// reported and treated as a miss.
    pub fn get(&self, key: &str) -> Option<Entry> {
        let path = self.path(key);
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice(&bytes) {
            Ok(e) => {
                log::debug!("cache hit {}", path.display());
                Some(e)
            }
            Err(err) => {
                log::warn!(
                    "corrupt cache entry {} ({err}); recomputing",
                    path.display()
                );
                None
            }
        }
    }

    /// Writes `entry` atomically unless a valid entry already exists.
    pub fn put(&self, key: &str, entry: &Entry) -> Result<()> {
        if self.get(key).is_some() {
            return Ok(());
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key))?;
        log::debug!("cache store {key}");
        Ok(())
    }
}

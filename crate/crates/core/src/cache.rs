//! Content-addressed result cache: one JSONL file per (dim, n) plus an
//! index, keyed by canonical graph key + formulation + pinning policy.
//! Payloads carry a checksum; mismatches surface as [`CacheError::Corrupt`].
//! Writes are buffered and flushed with an atomic rename.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("corrupt cache entry under key `{0}` (checksum mismatch)")]
    Corrupt(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

#[derive(Clone, Serialize, Deserialize)]
struct CacheLine {
    key: String,
    dim: u8,
    n: u8,
    payload: serde_json::Value,
    sha: String,
}

pub struct CacheStore {
    dir: PathBuf,
    entries: BTreeMap<String, CacheLine>,
    dirty: bool,
}

fn digest(payload: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("serializable payload");
    let mut h = Sha256::new();
    h.update(&bytes);
    format!("{:x}", h.finalize())
}

impl CacheStore {
    pub fn open(dir: &Path) -> Result<CacheStore, CacheError> {
        std::fs::create_dir_all(dir)?;
        let mut entries = BTreeMap::new();
        for item in std::fs::read_dir(dir)? {
            let path = item?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("jsonl") {
                continue;
            }
            let f = std::io::BufReader::new(std::fs::File::open(&path)?);
            for line in f.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: CacheLine = serde_json::from_str(&line)?;
                entries.insert(parsed.key.clone(), parsed);
            }
        }
        Ok(CacheStore { dir: dir.to_path_buf(), entries, dirty: false })
    }

    /// Composite key: canonical graph key + formulation + pinning policy.
    pub fn compose_key(graph_key_hex: &str, formulation: &str, policy: &str) -> String {
        format!("{graph_key_hex}:{formulation}:{policy}")
    }

    pub fn get(&self, key: &str) -> Result<Option<serde_json::Value>, CacheError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(line) => {
                if digest(&line.payload) != line.sha {
                    return Err(CacheError::Corrupt(key.to_string()));
                }
                Ok(Some(line.payload.clone()))
            }
        }
    }

    pub fn put(&mut self, key: &str, dim: u8, n: u8, payload: serde_json::Value) {
        let sha = digest(&payload);
        self.entries
            .insert(key.to_string(), CacheLine { key: key.to_string(), dim, n, payload, sha });
        self.dirty = true;
    }

    /// Write every (dim, n) shard to a temp file and rename it into place;
    /// also refreshes the index file.
    pub fn flush(&mut self) -> Result<(), CacheError> {
        if !self.dirty {
            return Ok(());
        }
        let mut shards: BTreeMap<(u8, u8), Vec<&CacheLine>> = BTreeMap::new();
        for line in self.entries.values() {
            shards.entry((line.dim, line.n)).or_default().push(line);
        }
        for ((dim, n), lines) in &shards {
            let path = self.dir.join(format!("dim{dim}_n{n}.jsonl"));
            let tmp = self.dir.join(format!("dim{dim}_n{n}.jsonl.tmp"));
            {
                let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
                for line in lines {
                    serde_json::to_writer(&mut f, line)?;
                    f.write_all(b"\n")?;
                }
                f.flush()?;
            }
            std::fs::rename(&tmp, &path)?;
        }
        let index: BTreeMap<String, String> = self
            .entries
            .values()
            .map(|l| (l.key.clone(), format!("dim{}_n{}.jsonl", l.dim, l.n)))
            .collect();
        let tmp = self.dir.join("index.json.tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(&index)?)?;
        std::fs::rename(&tmp, self.dir.join("index.json"))?;
        self.dirty = false;
        Ok(())
    }

    /// Drop entries whose checksum fails and rewrite the store.
    pub fn gc(&mut self) -> Result<usize, CacheError> {
        let before = self.entries.len();
        self.entries.retain(|_, line| digest(&line.payload) == line.sha);
        let dropped = before - self.entries.len();
        self.dirty = true;
        self.flush()?;
        Ok(dropped)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Drop for CacheStore {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

//! On-disk cache of per-element `k` values.
//!
//! One file of tab-separated records `key, k, witness, version` in the
//! cache directory (`RFG_CACHE`, default `./.rfg-cache`). The key is
//! `group|variant|canonical element`. A record from another tool version is
//! ignored, and every hit has its witness re-verified before use; a record
//! that fails is ignored too, so the cache can only save time.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;

use crate::error::Result;
use crate::witness::QuotientWitness;
use crate::TOOL_VERSION;

pub const CACHE_ENV: &str = "RFG_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".rfg-cache";
const RECORDS_FILE: &str = "records.tsv";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub key: String,
    pub k: BigUint,
    pub witness: String,
    pub version: String,
}

impl CacheRecord {
    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.key, self.k, self.witness, self.version
        )
    }

    pub fn from_line(line: &str) -> Option<Self> {
        let mut parts = line.split('\t');
        let key = parts.next()?.to_string();
        let k = parts.next()?.parse().ok()?;
        let witness = parts.next()?.to_string();
        let version = parts.next()?.to_string();
        parts.next().is_none().then_some(CacheRecord {
            key,
            k,
            witness,
            version,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub rejected: usize,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    records: Mutex<HashMap<String, CacheRecord>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
    rejected: AtomicUsize,
}

pub fn cache_key(group: &str, variant: &str, element: &str) -> String {
    format!("{group}|{variant}|{element}")
}

impl Cache {
    /// Opens (creating if needed) the cache in `dir`.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut records = HashMap::new();
        let path = dir.join(RECORDS_FILE);
        if path.exists() {
            for line in fs::read_to_string(&path)?.lines() {
                if let Some(r) = CacheRecord::from_line(line) {
                    records.insert(r.key.clone(), r);
                }
            }
        }
        Ok(Cache {
            dir,
            records: Mutex::new(records),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            rejected: AtomicUsize::new(0),
        })
    }

    /// Opens the cache named by `RFG_CACHE`, or `./.rfg-cache`.
    pub fn from_env() -> Result<Self> {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Self::open(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn len(&self) -> usize {
        self.records.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// A cached value whose version matches and whose witness passes
    /// `verify`.
    pub fn get(
        &self,
        key: &str,
        verify: impl Fn(&QuotientWitness) -> bool,
    ) -> Option<(BigUint, QuotientWitness)> {
        let record = self.records.lock().unwrap().get(key).cloned();
        let Some(record) = record else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        let usable = record.version == TOOL_VERSION;
        let witness = QuotientWitness::decode(&record.witness)
            .ok()
            .filter(|w| usable && w.order == record.k && verify(w));
        match witness {
            Some(w) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some((record.k, w))
            }
            None => {
                self.rejected.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    /// Stores a value, replacing any record under the same key.
    pub fn put(&self, key: &str, k: &BigUint, witness: &QuotientWitness) -> Result<()> {
        let record = CacheRecord {
            key: key.to_string(),
            k: k.clone(),
            witness: witness.encode(),
            version: TOOL_VERSION.to_string(),
        };
        let mut records = self.records.lock().unwrap();
        if records.get(key) == Some(&record) {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.dir.join(RECORDS_FILE))?;
        writeln!(file, "{}", record.to_line())?;
        records.insert(key.to_string(), record);
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            rejected: self.rejected.load(Ordering::Relaxed),
        }
    }
}

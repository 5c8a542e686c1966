//! Append-only JSONL result cache keyed by (Δ, ℓ, m).
//!
//! Each line is one entry: the key plus the record computed for it. A key
//! is never overwritten: re-appending an identical record is a no-op,
//! appending a different record for an existing key is a hard conflict.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use crate::report::ResultRecord;

pub type CacheKey = (i64, u64, u32);

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheEntry {
    delta: i64,
    ell: u64,
    m: u32,
    record: ResultRecord,
}

/// In-memory view of the cache file plus a serialized appender.
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<CacheKey, ResultRecord>,
    writer: Mutex<File>,
}

impl Cache {
    /// Load (or create) a cache file, detecting key conflicts immediately.
    pub fn open(path: &Path) -> anyhow::Result<Cache> {
        let mut entries = BTreeMap::new();
        if path.exists() {
            let file =
                File::open(path).with_context(|| format!("open cache {}", path.display()))?;
            for (no, line) in BufReader::new(file).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: CacheEntry = serde_json::from_str(&line)
                    .with_context(|| format!("cache line {}", no + 1))?;
                let key = (e.delta, e.ell, e.m);
                if let Some(prev) = entries.get(&key) {
                    if *prev != e.record {
                        bail!(
                            "cache conflict for key (delta={}, ell={}, m={}): \
                             two different records",
                            e.delta,
                            e.ell,
                            e.m
                        );
                    }
                } else {
                    entries.insert(key, e.record);
                }
            }
        }
        let writer = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("open cache {} for append", path.display()))?;
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
            writer: Mutex::new(writer),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &CacheKey) -> Option<&ResultRecord> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Append one record; writes are serialized, keys never overwritten.
    pub fn append(&self, key: CacheKey, record: &ResultRecord) -> anyhow::Result<()> {
        if let Some(prev) = self.entries.get(&key) {
            if prev != record {
                bail!(
                    "cache conflict for key (delta={}, ell={}, m={})",
                    key.0,
                    key.1,
                    key.2
                );
            }
            return Ok(());
        }
        let entry = CacheEntry {
            delta: key.0,
            ell: key.1,
            m: key.2,
            record: record.clone(),
        };
        let mut w = self.writer.lock().expect("cache writer lock");
        writeln!(w, "{}", serde_json::to_string(&entry)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(ms: u64) -> ResultRecord {
        ResultRecord {
            delta: 5,
            ell: 11,
            split: true,
            h_ell: "1".into(),
            wcl: "1".into(),
            rank: 1,
            torsion: "1".into(),
            rational: true,
            v_c_infty: "Trivial".into(),
            v_c_prime: "Trivial".into(),
            v_c_z: "Trivial".into(),
            stabilized: true,
            ms,
        }
    }

    #[test]
    fn roundtrip_and_conflict() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        {
            let c = Cache::open(&path).unwrap();
            c.append((5, 11, 8), &rec(3)).unwrap();
        }
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.get(&(5, 11, 8)), Some(&rec(3)));
        // identical re-append is fine
        c.append((5, 11, 8), &rec(3)).unwrap();
        // different record for the same key is a conflict
        assert!(c.append((5, 11, 8), &rec(4)).is_err());
    }

    #[test]
    fn conflicting_file_detected_on_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        {
            let c = Cache::open(&path).unwrap();
            c.append((5, 11, 8), &rec(3)).unwrap();
        }
        // forge a conflicting line
        {
            use std::io::Write;
            let mut f = OpenOptions::new().append(true).open(&path).unwrap();
            let entry = CacheEntry {
                delta: 5,
                ell: 11,
                m: 8,
                record: rec(99),
            };
            writeln!(f, "{}", serde_json::to_string(&entry).unwrap()).unwrap();
        }
        assert!(Cache::open(&path).is_err());
    }
}

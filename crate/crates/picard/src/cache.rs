//! Append-only store of point counts, one JSON record per line:
//! `{"fingerprint": ..., "p": 5, "d": 3, "N": "15626", "source": "computed"}`.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub fingerprint: String,
    pub p: u64,
    pub d: u32,
    #[serde(rename = "N")]
    pub n: String,
    pub source: String,
}

#[derive(Debug, Default)]
pub struct CacheStore {
    path: Option<PathBuf>,
    entries: HashMap<(String, u64, u32), BigUint>,
}

impl CacheStore {
    /// A store that forgets everything on drop.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Load the file if it exists; new records are appended to it.
    pub fn open(path: &Path) -> Result<Self> {
        let mut store = CacheStore { path: Some(path.to_path_buf()), entries: HashMap::new() };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(store),
            Err(source) => return Err(Error::Io { path: path.to_path_buf(), source }),
        };
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::Cache { path: path.to_path_buf(), line: i + 1, message };
            let e: CacheEntry = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
            let n = BigUint::from_str(&e.n).map_err(|_| bad(format!("N = {:?} is not a count", e.n)))?;
            let key = (e.fingerprint, e.p, e.d);
            if let Some(old) = store.entries.get(&key) {
                if *old != n {
                    return Err(bad(format!("conflicting counts {old} and {n} for d = {}", key.2)));
                }
            }
            store.entries.insert(key, n);
        }
        Ok(store)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, fingerprint: &str, p: u64, d: u32) -> Option<&BigUint> {
        self.entries.get(&(fingerprint.to_string(), p, d))
    }

    /// Record a computed count, appending it to the file when there is one.
    pub fn insert(&mut self, fingerprint: &str, p: u64, d: u32, n: &BigUint) -> Result<()> {
        let key = (fingerprint.to_string(), p, d);
        if self.entries.get(&key) == Some(n) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let entry =
                CacheEntry { fingerprint: fingerprint.into(), p, d, n: n.to_string(), source: "computed".into() };
            let line = serde_json::to_string(&entry).expect("cache entries serialize");
            let io = |source| Error::Io { path: path.clone(), source };
            let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
            writeln!(file, "{line}").map_err(io)?;
        }
        self.entries.insert(key, n.clone());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_across_opens() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("counts.jsonl");
        let mut store = CacheStore::open(&path).unwrap();
        assert!(store.is_empty());
        store.insert("abc", 5, 1, &BigUint::from(41u8)).unwrap();
        store.insert("abc", 5, 2, &BigUint::from(751u16)).unwrap();
        store.insert("abc", 5, 2, &BigUint::from(751u16)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with(r#"{"fingerprint":"abc","p":5,"d":1,"N":"41","source":"computed"}"#));
        let again = CacheStore::open(&path).unwrap();
        assert_eq!(again.get("abc", 5, 2), Some(&BigUint::from(751u16)));
        assert_eq!(again.get("abc", 3, 2), None);
    }

    #[test]
    fn rejects_corrupt_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("counts.jsonl");
        std::fs::write(&path, "{\"fingerprint\":\"a\",\"p\":5,\"d\":1,\"N\":\"x\",\"source\":\"computed\"}\n").unwrap();
        assert!(matches!(CacheStore::open(&path), Err(Error::Cache { line: 1, .. })));
        std::fs::write(&path, "not json\n").unwrap();
        assert!(CacheStore::open(&path).is_err());
    }
}

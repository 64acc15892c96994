//! Append-only result store.
//!
//! The file starts with the line [`CACHE_MAGIC`]; every further line is a
//! JSON object `{op, key, digest, payload}` where `digest` is the SHA-256 of
//! the compact serialization of `payload`. Entries are checked on load and
//! re-verified before reuse.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exclusivity::ExclusivityVerdict;
use crate::rh::ActionRecord;

pub const CACHE_MAGIC: &str = "surface-actions-cache v1";

pub const OP_ACTION: &str = "find-action";
pub const OP_VERDICT: &str = "genus-report";

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    op: String,
    key: String,
    digest: String,
    payload: Value,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of an operation and its canonical inputs.
pub fn cache_key(op: &str, inputs: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(op.as_bytes());
    for i in inputs {
        h.update([0u8]);
        h.update(i.as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: HashMap<(String, String), Value>,
    warnings: Vec<String>,
}

impl ResultCache {
    /// Opens or creates the cache. Malformed lines and digest mismatches are
    /// dropped with a warning; a file without the header is refused.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = ResultCache {
            path: path.clone(),
            entries: HashMap::new(),
            warnings: Vec::new(),
        };
        if !path.exists() || std::fs::metadata(&path)?.len() == 0 {
            std::fs::write(&path, format!("{CACHE_MAGIC}\n"))?;
            return Ok(cache);
        }
        let mut lines = BufReader::new(File::open(&path)?).lines();
        match lines.next().transpose()? {
            Some(h) if h == CACHE_MAGIC => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!(
                        "{} is not a result cache (missing '{CACHE_MAGIC}')",
                        path.display()
                    ),
                })
            }
        }
        for (i, line) in lines.enumerate() {
            let n = i + 2;
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    cache.warn(format!("line {n}: {e}"));
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Line>(&line) {
                Ok(l) if sha256_hex(l.payload.to_string().as_bytes()) == l.digest => {
                    cache.entries.insert((l.op, l.key), l.payload);
                }
                Ok(_) => cache.warn(format!("line {n}: digest mismatch, entry skipped")),
                Err(e) => cache.warn(format!("line {n}: {e}, entry skipped")),
            }
        }
        Ok(cache)
    }

    fn warn(&mut self, msg: String) {
        self.warnings
            .push(format!("cache {}: {msg}", self.path.display()));
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn append(&mut self, op: &str, key: &str, payload: Value) -> Result<()> {
        let line = Line {
            op: op.to_string(),
            key: key.to_string(),
            digest: sha256_hex(payload.to_string().as_bytes()),
            payload: payload.clone(),
        };
        let mut f = OpenOptions::new().append(true).open(&self.path)?;
        writeln!(
            f,
            "{}",
            serde_json::to_string(&line).expect("cache lines serialize")
        )?;
        self.entries
            .insert((op.to_string(), key.to_string()), payload);
        Ok(())
    }

    /// A stored action, if it still satisfies the Riemann–Hurwitz equation
    /// and its vector verifies.
    pub fn get_action(&mut self, key: &str) -> Option<ActionRecord> {
        let payload = self
            .entries
            .get(&(OP_ACTION.to_string(), key.to_string()))?
            .clone();
        let checked = serde_json::from_value::<ActionRecord>(payload)
            .map_err(|e| e.to_string())
            .and_then(|r| match r.verify() {
                Ok(rep) if rep.is_valid() => Ok(r),
                Ok(rep) => Err(format!("stored vector is {:?}", rep.verdict)),
                Err(e) => Err(e.to_string()),
            });
        self.accept(OP_ACTION, key, checked)
    }

    pub fn put_action(&mut self, key: &str, record: &ActionRecord) -> Result<()> {
        let v = serde_json::to_value(record).expect("records serialize");
        self.append(OP_ACTION, key, v)
    }

    /// A stored verdict, if every certificate in it recomputes.
    pub fn get_verdict(&mut self, key: &str) -> Option<ExclusivityVerdict> {
        let payload = self
            .entries
            .get(&(OP_VERDICT.to_string(), key.to_string()))?
            .clone();
        let checked = serde_json::from_value::<ExclusivityVerdict>(payload)
            .map_err(|e| e.to_string())
            .and_then(|v| v.verify().map(|_| v));
        self.accept(OP_VERDICT, key, checked)
    }

    pub fn put_verdict(&mut self, key: &str, verdict: &ExclusivityVerdict) -> Result<()> {
        let v = serde_json::to_value(verdict).expect("verdicts serialize");
        self.append(OP_VERDICT, key, v)
    }

    fn accept<T>(
        &mut self,
        op: &str,
        key: &str,
        checked: std::result::Result<T, String>,
    ) -> Option<T> {
        match checked {
            Ok(t) => Some(t),
            Err(e) => {
                self.entries.remove(&(op.to_string(), key.to_string()));
                self.warn(format!(
                    "{op} entry {key} failed re-verification ({e}), recomputing"
                ));
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exclusivity::{weakly_exclusive_verdict, VerdictOptions};
    use crate::rh::cyclic_two_point_action;

    #[test]
    fn store_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.cache");
        let rec = cyclic_two_point_action(4).unwrap();
        let verdict = weakly_exclusive_verdict(6, &VerdictOptions::default()).unwrap();
        {
            let mut c = ResultCache::open(&path).unwrap();
            c.put_action("k", &rec).unwrap();
            c.put_verdict("v", &verdict).unwrap();
        }
        let mut c = ResultCache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get_action("k"), Some(rec));
        assert_eq!(c.get_verdict("v"), Some(verdict));
        assert!(c.get_action("missing").is_none());
        assert!(c.warnings().is_empty());
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.cache");
        let rec = cyclic_two_point_action(4).unwrap();
        ResultCache::open(&path)
            .unwrap()
            .put_action("k", &rec)
            .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let tampered = text.replace("\"genus\":4", "\"genus\":5");
        std::fs::write(&path, format!("{tampered}not json\n")).unwrap();
        let mut c = ResultCache::open(&path).unwrap();
        assert!(c.get_action("k").is_none());
        assert_eq!(c.warnings().len(), 2);
    }

    #[test]
    fn forged_digest_still_reverified() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.cache");
        let mut rec = cyclic_two_point_action(4).unwrap();
        let mut c = ResultCache::open(&path).unwrap();
        rec.genus = 9;
        let v = serde_json::to_value(&rec);
        // a record with the wrong genus is rejected on deserialization or verify
        if let Ok(v) = v {
            c.append(OP_ACTION, "k", v).unwrap();
        }
        let mut c = ResultCache::open(&path).unwrap();
        assert!(c.get_action("k").is_none());
    }

    #[test]
    fn foreign_file_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.cache");
        std::fs::write(&path, "hello\n").unwrap();
        assert!(ResultCache::open(&path).is_err());
    }

    #[test]
    fn keys_separate_inputs() {
        assert_ne!(cache_key("op", &["ab", "c"]), cache_key("op", &["a", "bc"]));
    }
}

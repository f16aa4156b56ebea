//! Append-only JSON-lines store of [`ResultRecord`]s keyed by
//! `(descriptor, quantity)`.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use domprod::Graph;

use crate::record::ResultRecord;

pub const CACHE_ENV: &str = "DOMPROD_CACHE";

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Cache {
        Cache { path: path.into() }
    }

    /// `$DOMPROD_CACHE`, else `$XDG_CACHE_HOME/domprod/results.jsonl`, else
    /// `~/.cache/domprod/results.jsonl`.
    pub fn from_env() -> Option<Cache> {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return Some(Cache::new(p));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))?;
        Some(Cache::new(base.join("domprod").join("results.jsonl")))
    }

    /// Best entry for the key whose witness still checks out on `g`: an
    /// optimal one if present, otherwise the latest.
    pub fn lookup(&self, descriptor: &str, quantity: &str, g: &Graph) -> Result<Option<ResultRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("opening cache {}", self.path.display())),
        };
        file.lock_shared()?;
        let entries = read_entries(&file, descriptor, quantity)?;
        file.unlock()?;
        let valid: Vec<ResultRecord> = entries.into_iter().filter(|r| r.witness_valid(g)).collect();
        let best = valid.iter().rev().find(|r| r.optimal).or(valid.last()).cloned();
        Ok(best.map(|r| ResultRecord { cached: true, ..r }))
    }

    /// Appends `record` unless an optimal entry for its key already exists
    /// and `record` would not improve on it. Returns whether a line was
    /// written.
    pub fn store(&self, record: &ResultRecord) -> Result<bool> {
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&self.path)
            .with_context(|| format!("opening cache {}", self.path.display()))?;
        file.lock()?;
        let (descriptor, quantity) = record.key();
        let existing = read_entries(&file, descriptor, quantity)?;
        let has_optimal = existing.iter().any(|r| r.optimal);
        let duplicate = existing.iter().any(|r| r.optimal == record.optimal && r.value == record.value);
        let write = !duplicate && (record.optimal || !has_optimal);
        if write {
            let line = serde_json::to_string(&ResultRecord { cached: false, ..record.clone() })?;
            file.seek(SeekFrom::End(0))?;
            writeln!(file, "{line}")?;
            file.flush()?;
        }
        file.unlock()?;
        Ok(write)
    }
}

/// Entries for one key from the current tool version. Unparseable lines
/// are skipped.
fn read_entries(file: &File, descriptor: &str, quantity: &str) -> Result<Vec<ResultRecord>> {
    let mut reader = BufReader::new(file);
    reader.seek(SeekFrom::Start(0))?;
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let Ok(r) = serde_json::from_str::<ResultRecord>(&line) else { continue };
        if r.key() == (descriptor, quantity) && r.tool_version == domprod::VERSION {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use domprod::graphkit::unitary_cayley;

    fn record(value: u64, witness: Vec<usize>, optimal: bool) -> ResultRecord {
        ResultRecord {
            descriptor: "ucg:30".into(),
            quantity: "gamma".into(),
            value,
            lo: 4,
            hi: value,
            witness,
            witness_tuples: Vec::new(),
            optimal,
            method: "branch-and-bound".into(),
            nodes: 1,
            elapsed_ms: 0,
            tool_version: domprod::VERSION.into(),
            cached: false,
        }
    }

    fn lines(cache: &Cache) -> usize {
        std::fs::read_to_string(&cache.path).map_or(0, |s| s.lines().count())
    }

    #[test]
    fn optimal_entries_are_never_replaced_by_worse_ones() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("sub/results.jsonl"));
        let g = unitary_cayley(30).unwrap();
        assert!(cache.lookup("ucg:30", "gamma", &g).unwrap().is_none());

        assert!(cache.store(&record(6, (0..6).collect(), false)).unwrap());
        let hit = cache.lookup("ucg:30", "gamma", &g).unwrap().unwrap();
        assert!(hit.cached && !hit.optimal);

        assert!(cache.store(&record(4, vec![0, 3, 5, 8], true)).unwrap());
        assert!(!cache.store(&record(5, vec![0, 1, 2, 3, 4], false)).unwrap());
        assert!(!cache.store(&record(4, vec![0, 3, 5, 8], true)).unwrap());
        assert_eq!(lines(&cache), 2);
        let hit = cache.lookup("ucg:30", "gamma", &g).unwrap().unwrap();
        assert!(hit.optimal && hit.value == 4);
    }

    #[test]
    fn entries_failing_the_checker_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("results.jsonl"));
        let g = unitary_cayley(30).unwrap();
        cache.store(&record(3, vec![0, 1, 2], true)).unwrap();
        cache.store(&record(4, vec![0, 1, 2, 2], true)).unwrap();
        assert!(cache.lookup("ucg:30", "gamma", &g).unwrap().is_none());
    }

    #[test]
    fn other_versions_and_garbage_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("results.jsonl"));
        let mut old = record(4, vec![0, 3, 5, 8], true);
        old.tool_version = "0.0.0-old".into();
        let text = format!("{}\nnot json\n", serde_json::to_string(&old).unwrap());
        std::fs::write(&cache.path, text).unwrap();
        let g = unitary_cayley(30).unwrap();
        assert!(cache.lookup("ucg:30", "gamma", &g).unwrap().is_none());
        assert!(cache.store(&record(4, vec![0, 3, 5, 8], true)).unwrap());
        assert!(cache.lookup("ucg:30", "gamma", &g).unwrap().unwrap().optimal);
    }
}

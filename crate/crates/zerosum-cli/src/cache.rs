//! JSON-lines result cache: one entry per line, append-only, keyed by the
//! canonical (primary-form group, sorted weights, kind) triple.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use zerosum_lab::solver::{ConstantKind, ConstantResult};
use zerosum_lab::{GroupSpec, WeightSet};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheKey {
    pub group: Vec<u64>,
    pub weights: Vec<u64>,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheValue {
    pub value: u64,
    pub extremal: Vec<Vec<u64>>,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub cap_hit: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub value: CacheValue,
    pub tool_version: String,
}

/// Parse and sanity-check one cache line. Used both by the loader and as a
/// decoder entry point for untrusted input.
pub fn parse_cache_line(line: &str) -> Result<CacheEntry, String> {
    let entry: CacheEntry = serde_json::from_str(line).map_err(|e| e.to_string())?;
    if entry.key.group.is_empty() || entry.key.group.iter().any(|&f| f < 2) {
        return Err("cache key has an invalid group".into());
    }
    if entry.key.weights.is_empty() {
        return Err("cache key has an empty weight set".into());
    }
    if !entry.key.weights.windows(2).all(|w| w[0] < w[1]) {
        return Err("cache key weights are not sorted".into());
    }
    ConstantKind::parse(&entry.key.kind).map_err(|e| e.to_string())?;
    Ok(entry)
}

pub fn canonical_key(group: &GroupSpec, weights: &WeightSet, kind: ConstantKind) -> CacheKey {
    CacheKey {
        group: group.primary_decomposition().to_vec(),
        weights: weights.values().to_vec(),
        kind: kind.as_str().to_string(),
    }
}

pub struct Cache {
    path: Option<PathBuf>,
    map: HashMap<String, CacheEntry>,
    hits: u64,
    misses: u64,
}

fn key_string(key: &CacheKey) -> String {
    serde_json::to_string(key).expect("cache keys always serialize")
}

impl Cache {
    /// An in-memory cache with no backing file.
    pub fn in_memory() -> Cache {
        Cache {
            path: None,
            map: HashMap::new(),
            hits: 0,
            misses: 0,
        }
    }

    /// Load a JSON-lines cache file; corrupt lines are skipped with a
    /// warning. A missing file is an empty cache.
    pub fn open(path: &Path) -> Cache {
        let mut cache = Cache {
            path: Some(path.to_path_buf()),
            map: HashMap::new(),
            hits: 0,
            misses: 0,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(_) => return cache,
        };
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    eprintln!("warning: cache read error at line {}: {e}", lineno + 1);
                    break;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match parse_cache_line(&line) {
                Ok(entry) => {
                    cache.map.insert(key_string(&entry.key), entry);
                }
                Err(e) => eprintln!(
                    "warning: skipping corrupt cache entry at line {}: {e}",
                    lineno + 1
                ),
            }
        }
        cache
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    /// Trusted lookup: entries with cap_hit set are never returned.
    pub fn get(&mut self, key: &CacheKey) -> Option<CacheEntry> {
        match self.map.get(&key_string(key)) {
            Some(e) if !e.value.cap_hit => {
                self.hits += 1;
                Some(e.clone())
            }
            _ => {
                self.misses += 1;
                None
            }
        }
    }

    /// Insert and append to the backing file; repeated puts of the same key
    /// leave a single entry. Untrusted (cap_hit) values are not stored.
    pub fn put(&mut self, entry: CacheEntry) -> std::io::Result<()> {
        if entry.value.cap_hit {
            return Ok(());
        }
        let ks = key_string(&entry.key);
        if self.map.contains_key(&ks) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{}", serde_json::to_string(&entry).expect("serializable"))?;
        }
        self.map.insert(ks, entry);
        Ok(())
    }

    /// Keys currently stored, sorted for deterministic iteration.
    pub fn keys(&self) -> Vec<CacheKey> {
        let mut ks: Vec<(&String, &CacheEntry)> = self.map.iter().collect();
        ks.sort_by(|a, b| a.0.cmp(b.0));
        ks.into_iter().map(|(_, e)| e.key.clone()).collect()
    }
}

pub fn entry_from_result(
    group: &GroupSpec,
    weights: &WeightSet,
    res: &ConstantResult,
) -> CacheEntry {
    CacheEntry {
        key: canonical_key(group, weights, res.kind),
        value: CacheValue {
            value: res.value,
            extremal: res
                .extremal
                .elements()
                .iter()
                .map(|e| e.residues().to_vec())
                .collect(),
            nodes: res.nodes_explored,
            elapsed_ms: res.elapsed.as_millis() as u64,
            cap_hit: res.cap_hit,
        },
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zerosum_lab::make_group;

    fn sample_entry(value: u64) -> CacheEntry {
        CacheEntry {
            key: CacheKey {
                group: vec![2, 3],
                weights: vec![1, 5],
                kind: "dA".into(),
            },
            value: CacheValue {
                value,
                extremal: vec![vec![1], vec![1]],
                nodes: 10,
                elapsed_ms: 1,
                cap_hit: false,
            },
            tool_version: "test".into(),
        }
    }

    #[test]
    fn canonical_keys_normalize_presentation() {
        let a = make_group(&[6]).unwrap();
        let b = make_group(&[3, 2]).unwrap();
        let w = WeightSet::new(&[5, 1], 6).unwrap();
        let ka = canonical_key(&a, &w, ConstantKind::Da);
        let kb = canonical_key(&b, &w, ConstantKind::Da);
        assert_eq!(ka, kb);
        assert_eq!(ka.group, vec![2, 3]);
        assert_eq!(ka.weights, vec![1, 5]);
    }

    #[test]
    fn put_is_idempotent() {
        let mut cache = Cache::in_memory();
        cache.put(sample_entry(4)).unwrap();
        cache.put(sample_entry(9)).unwrap();
        assert_eq!(cache.len(), 1);
        let got = cache.get(&sample_entry(0).key).unwrap();
        assert_eq!(got.value.value, 4);
    }

    #[test]
    fn cap_hit_entries_are_not_trusted() {
        let mut cache = Cache::in_memory();
        let mut e = sample_entry(4);
        e.value.cap_hit = true;
        cache.put(e).unwrap();
        assert!(cache.is_empty());
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = std::env::temp_dir().join(format!("zs-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.jsonl");
        let good = serde_json::to_string(&sample_entry(4)).unwrap();
        std::fs::write(&path, format!("{good}\nnot json at all\n{{\"key\":1}}\n")).unwrap();
        let cache = Cache::open(&path);
        assert_eq!(cache.len(), 1);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn parse_rejects_bad_keys() {
        assert!(parse_cache_line("{}").is_err());
        let mut e = sample_entry(4);
        e.key.group = vec![];
        let line = serde_json::to_string(&e).unwrap();
        assert!(parse_cache_line(&line).is_err());
        let mut e = sample_entry(4);
        e.key.weights = vec![5, 1];
        let line = serde_json::to_string(&e).unwrap();
        assert!(parse_cache_line(&line).is_err());
        let mut e = sample_entry(4);
        e.key.kind = "bogus".into();
        let line = serde_json::to_string(&e).unwrap();
        assert!(parse_cache_line(&line).is_err());
    }
}

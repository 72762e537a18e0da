//! Append-only on-disk cache of per-graph invariants keyed by graph6.
//!
//! One record per line: `graph6 \t lcc \t chi \t alpha \t omega`. A file
//! that fails to parse is discarded and rebuilt; deleting it is always safe.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::cover::lcc_exact;
use crate::graph::Graph;
use crate::invariants::{chromatic_number, clique_number, independence_number};

use super::HarnessError;

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "LCC_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub lcc: usize,
    pub chi: usize,
    pub alpha: usize,
    pub omega: usize,
}

impl Bundle {
    pub fn compute(g: &Graph) -> Bundle {
        Bundle {
            lcc: lcc_exact(g).0,
            chi: chromatic_number(g).0,
            alpha: independence_number(g).0,
            omega: clique_number(g).0,
        }
    }

    fn to_line(self, key: &str) -> String {
        format!(
            "{key}\t{}\t{}\t{}\t{}\n",
            self.lcc, self.chi, self.alpha, self.omega
        )
    }

    fn parse_line(line: &str) -> Option<(String, Bundle)> {
        let mut it = line.split('\t');
        let key = it.next()?;
        Graph::parse_graph6(key).ok()?;
        let mut num = || it.next()?.parse::<usize>().ok();
        let bundle = Bundle {
            lcc: num()?,
            chi: num()?,
            alpha: num()?,
            omega: num()?,
        };
        if it.next().is_some() {
            return None;
        }
        Some((key.to_string(), bundle))
    }
}

pub struct InvariantCache {
    path: Option<PathBuf>,
    map: RwLock<HashMap<String, Bundle>>,
    writer: Mutex<Option<BufWriter<File>>>,
    rebuilt: bool,
    solver_invocations: AtomicU64,
    hits: AtomicU64,
}

impl InvariantCache {
    pub fn in_memory() -> Self {
        InvariantCache {
            path: None,
            map: RwLock::new(HashMap::new()),
            writer: Mutex::new(None),
            rebuilt: false,
            solver_invocations: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        }
    }

    /// Opens (creating if needed) the cache file at `path`.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref().to_path_buf();
        let mut map = HashMap::new();
        let mut corrupt = false;
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = match line {
                    Ok(l) => l,
                    Err(_) => {
                        corrupt = true;
                        break;
                    }
                };
                match Bundle::parse_line(&line) {
                    Some((k, b)) => {
                        map.insert(k, b);
                    }
                    None => {
                        log::warn!(
                            "cache {} corrupt at line {}; rebuilding from scratch",
                            path.display(),
                            lineno + 1
                        );
                        corrupt = true;
                        break;
                    }
                }
            }
        }
        if corrupt {
            map.clear();
        }
        let file = OpenOptions::new()
            .create(true)
            .append(!corrupt)
            .write(true)
            .truncate(corrupt)
            .open(&path)?;
        Ok(InvariantCache {
            path: Some(path),
            map: RwLock::new(map),
            writer: Mutex::new(Some(BufWriter::new(file))),
            rebuilt: corrupt,
            solver_invocations: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        })
    }

    /// Opens the cache named by `LCC_CACHE`, if set.
    pub fn from_env() -> Result<Option<Self>, HarnessError> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) if !p.is_empty() => Ok(Some(InvariantCache::open(p)?)),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Whether the file was found corrupt and rebuilt on open.
    pub fn was_rebuilt(&self) -> bool {
        self.rebuilt
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<Bundle> {
        self.map.read().expect("cache lock").get(key).copied()
    }

    /// Inserts `bundle` and appends it to the file when `key` is new.
    pub fn put(&self, key: &str, bundle: Bundle) -> Result<(), HarnessError> {
        {
            let mut map = self.map.write().expect("cache lock");
            if map.contains_key(key) {
                return Ok(());
            }
            map.insert(key.to_string(), bundle);
        }
        if let Some(w) = self.writer.lock().expect("cache writer lock").as_mut() {
            w.write_all(bundle.to_line(key).as_bytes())?;
        }
        Ok(())
    }

    /// Cached bundle for `g`, computing and storing it on a miss.
    pub fn bundle(&self, g: &Graph) -> Result<Bundle, HarnessError> {
        let key = g.to_graph6()?;
        if let Some(b) = self.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(b);
        }
        self.solver_invocations.fetch_add(1, Ordering::Relaxed);
        let b = Bundle::compute(g);
        self.put(&key, b)?;
        Ok(b)
    }

    pub fn flush(&self) -> Result<(), HarnessError> {
        if let Some(w) = self.writer.lock().expect("cache writer lock").as_mut() {
            w.flush()?;
        }
        Ok(())
    }

    /// Bundles computed because of a miss since this cache was opened.
    pub fn solver_invocations(&self) -> u64 {
        self.solver_invocations.load(Ordering::Relaxed)
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }
}

impl Drop for InvariantCache {
    fn drop(&mut self) {
        if let Ok(mut guard) = self.writer.lock() {
            if let Some(w) = guard.as_mut() {
                let _ = w.flush();
            }
        }
    }
}

//! On-disk, content-addressed store for computed JSON values.
//!
//! Each entry is `<key>.json` next to a `<key>.lock` file. Writers hold an
//! exclusive advisory lock on the lock file and publish by renaming a temp file,
//! so readers never observe a half-written entry. Within one process, callers
//! asking for the same key share a single computation.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "PG_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".pg-cache";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache io at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Compute(String),
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

/// Whether the value came from disk or was computed by this call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Hit,
    Miss,
    /// An unreadable entry was found and replaced.
    Repaired,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Hit => "hit",
            Source::Miss => "miss",
            Source::Repaired => "repaired",
        }
    }
}

type Slot = Arc<OnceLock<Result<(Arc<String>, Source), String>>>;

pub struct Cache {
    dir: PathBuf,
    inflight: Mutex<HashMap<String, Slot>>,
    computed: AtomicUsize,
}

/// Hex SHA-256 over length-prefixed parts, so `["ab","c"]` and `["a","bc"]` differ.
pub fn key_of(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into(), inflight: Mutex::new(HashMap::new()), computed: AtomicUsize::new(0) }
    }

    /// Explicit directory, else `$PG_CACHE_DIR`, else `.pg-cache`.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = flag
            .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Number of thunks this instance has actually run.
    pub fn computations(&self) -> usize {
        self.computed.load(Ordering::SeqCst)
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get_or_compute<T, F>(&self, key: &str, thunk: F) -> Result<(T, Source), CacheError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, String>,
    {
        let slot = {
            let mut m = self.inflight.lock().unwrap();
            m.entry(key.to_string()).or_default().clone()
        };
        let mut io_err = None;
        let res = slot.get_or_init(|| match self.load_or_store(key, thunk) {
            Ok(v) => Ok(v),
            Err(CacheError::Compute(e)) => Err(e),
            Err(e) => {
                let msg = e.to_string();
                io_err = Some(e);
                Err(msg)
            }
        });
        if let Some(e) = io_err {
            self.inflight.lock().unwrap().remove(key);
            return Err(e);
        }
        match res {
            Ok((text, src)) => serde_json::from_str(text)
                .map(|v| (v, *src))
                .map_err(|e| CacheError::Compute(format!("cached value does not decode: {e}"))),
            Err(e) => Err(CacheError::Compute(e.clone())),
        }
    }

    fn load_or_store<T, F>(&self, key: &str, thunk: F) -> Result<(Arc<String>, Source), CacheError>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T, String>,
    {
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let lock_path = self.dir.join(format!("{key}.lock"));
        let lock = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&lock_path)
            .map_err(io(&lock_path))?;
        lock.lock().map_err(io(&lock_path))?;

        let path = self.entry_path(key);
        let mut source = Source::Miss;
        match fs::read_to_string(&path) {
            Ok(text) if serde_json::from_str::<T>(&text).is_ok() => return Ok((Arc::new(text), Source::Hit)),
            Ok(_) => source = Source::Repaired,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            // unreadable bytes (e.g. invalid UTF-8) count as corruption
            Err(e) if e.kind() == std::io::ErrorKind::InvalidData => source = Source::Repaired,
            Err(e) => return Err(CacheError::Io { path, source: e }),
        }

        self.computed.fetch_add(1, Ordering::SeqCst);
        let value = thunk().map_err(CacheError::Compute)?;
        let text = serde_json::to_string(&value).map_err(|e| CacheError::Compute(e.to_string()))?;
        let tmp = self.dir.join(format!("{key}.json.{}.tmp", std::process::id()));
        let mut f = File::create(&tmp).map_err(io(&tmp))?;
        f.write_all(text.as_bytes()).map_err(io(&tmp))?;
        f.sync_all().map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))?;
        Ok((Arc::new(text), source))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miss_then_hit_is_identical() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::new(d.path());
        let (a, s1): (Vec<String>, _) = c.get_or_compute("k", || Ok(vec!["x".into(), "1/2".into()])).unwrap();
        assert_eq!(s1, Source::Miss);
        let c2 = Cache::new(d.path());
        let (b, s2): (Vec<String>, _) = c2.get_or_compute("k", || Err("must not run".into())).unwrap();
        assert_eq!((a, s2, c2.computations()), (b, Source::Hit, 0));
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::new(d.path());
        fs::write(c.entry_path("k"), b"{not json").unwrap();
        let (v, s): (u32, _) = c.get_or_compute("k", || Ok(7)).unwrap();
        assert_eq!((v, s), (7, Source::Repaired));
        assert_eq!(fs::read_to_string(c.entry_path("k")).unwrap(), "7");
    }

    #[test]
    fn parallel_requests_compute_once() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::new(d.path());
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| {
                    let (v, _): (u64, _) = c
                        .get_or_compute("same", || {
                            std::thread::sleep(std::time::Duration::from_millis(50));
                            Ok(42)
                        })
                        .unwrap();
                    assert_eq!(v, 42);
                });
            }
        });
        assert_eq!(c.computations(), 1);
    }

    #[test]
    fn keys_separate_parts() {
        assert_ne!(key_of(&[b"ab", b"c"]), key_of(&[b"a", b"bc"]));
        assert_eq!(key_of(&[b"x"]).len(), 64);
    }

    #[test]
    fn compute_errors_propagate() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::new(d.path());
        let r: Result<(u8, _), _> = c.get_or_compute("e", || Err("boom".into()));
        assert!(matches!(r, Err(CacheError::Compute(m)) if m == "boom"));
        assert!(!c.entry_path("e").exists());
    }
}

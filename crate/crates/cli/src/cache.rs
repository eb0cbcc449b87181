//! On-disk cache of computed matrices, kernels and bases.
//!
//! One JSON file per entry, named by a hash of the key. Entries carry a
//! SHA-256 checksum of their payload and are written to a temporary file in
//! the cache directory, then renamed into place, so readers only ever see
//! complete entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Abort between writing the temporary file and renaming it (crash testing).
pub const CRASH_ENV: &str = "MZVLAB_CACHE_CRASH_BEFORE_RENAME";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub artifact: String,
    pub family: String,
    pub weight: u32,
    pub j: Option<u8>,
    pub version: String,
}

impl CacheKey {
    pub fn new(artifact: &str, family: &str, weight: u32, j: Option<u8>) -> Self {
        CacheKey {
            artifact: artifact.into(),
            family: family.into(),
            weight,
            j,
            version: mzvlab_core::suites::VERSION.into(),
        }
    }

    fn file_name(&self) -> String {
        let canon = serde_json::to_string(self).expect("key serializes");
        format!("{}.json", &hex::encode(Sha256::digest(canon.as_bytes()))[..32])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub payload: String,
    pub checksum: String,
}

impl CacheEntry {
    fn new(key: CacheKey, payload: String) -> Self {
        let checksum = checksum(&payload);
        CacheEntry { key, payload, checksum }
    }

    pub fn is_intact(&self) -> bool {
        checksum(&self.payload) == self.checksum
    }
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Payload for `key`, if a complete entry with a matching key and
    /// checksum exists. Anything else reads as a miss.
    pub fn get(&self, key: &CacheKey) -> Option<String> {
        let text = fs::read_to_string(self.dir.join(key.file_name())).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == *key && entry.is_intact()).then_some(entry.payload)
    }

    pub fn put(&self, key: &CacheKey, payload: &str) -> Result<()> {
        let entry = CacheEntry::new(key.clone(), payload.to_string());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)
            .with_context(|| format!("cannot write to cache directory {}", self.dir.display()))?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.as_file().sync_all()?;
        if std::env::var_os(CRASH_ENV).is_some() {
            std::process::abort();
        }
        tmp.persist(self.dir.join(key.file_name())).context("cannot move cache entry into place")?;
        Ok(())
    }

    /// Cached payload for `key`, computing and storing it on a miss.
    pub fn get_or_compute(&self, key: &CacheKey, compute: impl FnOnce() -> Result<String>) -> Result<String> {
        if let Some(p) = self.get(key) {
            return Ok(p);
        }
        let payload = compute()?;
        self.put(key, &payload)?;
        Ok(payload)
    }

    fn entry_files(&self) -> Result<Vec<PathBuf>> {
        let mut files: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        Ok(files)
    }

    /// All entry files with their parsed contents (`None` when unreadable or
    /// corrupt).
    pub fn entries(&self) -> Result<Vec<(PathBuf, u64, Option<CacheEntry>)>> {
        self.entry_files()?
            .into_iter()
            .map(|p| {
                let size = fs::metadata(&p)?.len();
                let entry = fs::read_to_string(&p)
                    .ok()
                    .and_then(|t| serde_json::from_str::<CacheEntry>(&t).ok())
                    .filter(CacheEntry::is_intact);
                Ok((p, size, entry))
            })
            .collect()
    }

    /// Remove every entry and leftover temporary file; returns the number of
    /// entries removed.
    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        for e in fs::read_dir(&self.dir)? {
            let p = e?.path();
            let name = p.file_name().and_then(|s| s.to_str()).unwrap_or("");
            let is_entry = p.extension().is_some_and(|x| x == "json");
            if is_entry || name.starts_with(".tmp") {
                fs::remove_file(&p).with_context(|| format!("cannot remove {}", p.display()))?;
                n += is_entry as usize;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("matrix", "B2", 11, None);
        assert_eq!(cache.get(&key), None);
        cache.put(&key, "{\"x\":\"1/3\"}").unwrap();
        assert_eq!(cache.get(&key).as_deref(), Some("{\"x\":\"1/3\"}"));

        let other = CacheKey { version: "0.0.0-old".into(), ..key.clone() };
        assert_eq!(cache.get(&other), None);

        let path = dir.path().join(key.file_name());
        let mut entry: CacheEntry = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        entry.payload.push(' ');
        fs::write(&path, serde_json::to_string(&entry).unwrap()).unwrap();
        assert_eq!(cache.get(&key), None);
        assert!(cache.entries().unwrap()[0].2.is_none());
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.entries().unwrap().is_empty());
    }
}

//! On-disk cache of characteristic lattices, one JSON file per shape.
//!
//! Files are named by the SHA-256 of the canonical shape string and written
//! through a temporary file and a rename, so readers never see partial
//! entries. Anything unreadable is treated as a miss.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::group::GroupShape;
use crate::invariance::{CharacteristicLattice, GroupContext, LatticeEntry};
use crate::lattice::Subgroup;

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedSubgroup {
    pub generators: Vec<Vec<u64>>,
    pub fully_invariant: bool,
    pub iso_type: GroupShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: String,
    pub payload: Vec<CachedSubgroup>,
}

impl CacheEntry {
    pub fn from_lattice(lattice: &CharacteristicLattice) -> Self {
        CacheEntry {
            version: CACHE_VERSION,
            key: lattice.shape.to_string(),
            payload: lattice
                .entries
                .iter()
                .map(|e| CachedSubgroup {
                    generators: e
                        .subgroup
                        .generators()
                        .iter()
                        .map(|g| g.coords().to_vec())
                        .collect(),
                    fully_invariant: e.fully_invariant,
                    iso_type: e.iso_type.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds the lattice; `None` if the entry does not belong to `shape`.
    pub fn to_lattice(&self, shape: &Arc<GroupShape>) -> Option<CharacteristicLattice> {
        if self.version != CACHE_VERSION || self.key != shape.to_string() {
            return None;
        }
        let mut entries = Vec::with_capacity(self.payload.len());
        for c in &self.payload {
            let gens: Vec<_> = c
                .generators
                .iter()
                .map(|g| {
                    let coords: Vec<i64> = g.iter().map(|&x| x as i64).collect();
                    shape.element(&coords)
                })
                .collect::<crate::Result<_>>()
                .ok()?;
            entries.push(LatticeEntry {
                subgroup: Subgroup::span(shape, &gens).ok()?,
                fully_invariant: c.fully_invariant,
                iso_type: c.iso_type.clone(),
            });
        }
        Some(CharacteristicLattice {
            shape: Arc::clone(shape),
            entries,
        })
    }
}

pub struct Cache {
    dir: PathBuf,
    enabled: AtomicBool,
    tmp_counter: AtomicU64,
}

impl Cache {
    /// Opens (creating if needed) a cache directory. Failure disables the cache.
    pub fn open(dir: impl AsRef<Path>) -> Self {
        let dir = dir.as_ref().to_path_buf();
        let enabled = match fs::create_dir_all(&dir) {
            Ok(()) => true,
            Err(e) => {
                log::warn!("cache disabled: cannot create {}: {e}", dir.display());
                false
            }
        };
        Cache {
            dir,
            enabled: AtomicBool::new(enabled),
            tmp_counter: AtomicU64::new(0),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled.load(Ordering::Relaxed)
    }

    fn path_for(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        if !self.is_enabled() {
            return None;
        }
        let bytes = fs::read(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_slice(&bytes).ok()?;
        (entry.version == CACHE_VERSION && entry.key == key).then_some(entry)
    }

    pub fn put(&self, entry: &CacheEntry) {
        if !self.is_enabled() {
            return;
        }
        let path = self.path_for(&entry.key);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            self.tmp_counter.fetch_add(1, Ordering::Relaxed)
        ));
        let result = serde_json::to_vec(entry)
            .map_err(std::io::Error::other)
            .and_then(|bytes| fs::write(&tmp, bytes))
            .and_then(|()| fs::rename(&tmp, &path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            log::warn!("cache disabled: cannot write {}: {e}", path.display());
            self.enabled.store(false, Ordering::Relaxed);
        }
    }

    /// The lattice for `ctx`, from the cache when present and valid.
    pub fn lattice(&self, ctx: &GroupContext) -> CharacteristicLattice {
        let key = ctx.shape().to_string();
        if let Some(l) = self.get(&key).and_then(|e| e.to_lattice(ctx.shape())) {
            return l;
        }
        let lattice = ctx.lattice();
        self.put(&CacheEntry::from_lattice(&lattice));
        lattice
    }
}

//! On-disk cache of character tables.
//!
//! One JSON file per group fingerprint. The fingerprint hashes the group
//! descriptor together with its order and class representatives, so a table
//! is only reused for the identical enumeration. The directory comes from
//! `PARAHECKE_CACHE_DIR`, falling back to `$XDG_CACHE_HOME/parahecke`,
//! `~/.cache/parahecke`, then `./.parahecke-cache`.

use std::path::{Path, PathBuf};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::dixon::TableData;
use super::group::FiniteGroup;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "PARAHECKE_CACHE_DIR";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    descriptor: String,
    order: usize,
    class_reps: Vec<u32>,
    conductor: u32,
    prime: u64,
    /// `values[χ][class]` as power-basis coordinates in `ℚ(ζ_conductor)`.
    values: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheStatus {
    pub dir: PathBuf,
    pub entries: usize,
    pub bytes: u64,
    /// `(fingerprint, bytes)` sorted by fingerprint.
    pub files: Vec<(String, u64)>,
}

fn installed_slot() -> &'static RwLock<Option<TableCache>> {
    static SLOT: OnceLock<RwLock<Option<TableCache>>> = OnceLock::new();
    SLOT.get_or_init(|| RwLock::new(None))
}

/// Makes [`super::character_table`] read and write through `cache`.
pub fn install(cache: Option<TableCache>) {
    *installed_slot().write().unwrap() = cache;
}

pub fn installed() -> Option<TableCache> {
    installed_slot().read().unwrap().clone()
}

pub fn default_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("parahecke");
    }
    if let Some(h) = std::env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("parahecke");
    }
    PathBuf::from(".parahecke-cache")
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn from_env() -> Self {
        Self::new(default_dir())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex digest identifying `group`, or `None` without a descriptor.
    pub fn fingerprint(group: &FiniteGroup) -> Result<Option<String>> {
        let Some(desc) = group.descriptor() else {
            return Ok(None);
        };
        let cl = group.classes()?;
        let mut h = Sha256::new();
        h.update(format!("v{FORMAT_VERSION}|{desc}|{}|", group.order()));
        for r in &cl.reps {
            h.update(r.to_le_bytes());
        }
        Ok(Some(hex::encode(h.finalize())))
    }

    fn path_for(&self, fp: &str) -> PathBuf {
        self.dir.join(format!("{fp}.json"))
    }

    pub fn load(&self, group: &FiniteGroup) -> Result<Option<TableData>> {
        let Some(fp) = Self::fingerprint(group)? else {
            return Ok(None);
        };
        let path = self.path_for(&fp);
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path)?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::Cache(e.to_string()))?;
        let cl = group.classes()?;
        if file.version != FORMAT_VERSION || file.order != group.order() || file.class_reps != cl.reps {
            return Ok(None);
        }
        let values: Option<Vec<Vec<Cyclotomic>>> = file
            .values
            .iter()
            .map(|row| row.iter().map(|c| Cyclotomic::from_strings(file.conductor, c)).collect())
            .collect();
        let values = values.ok_or_else(|| Error::Cache(format!("malformed entry {}", path.display())))?;
        Ok(Some(TableData {
            conductor: file.conductor,
            prime: file.prime,
            values,
        }))
    }

    pub fn store(&self, group: &FiniteGroup, data: &TableData) -> Result<()> {
        let Some(fp) = Self::fingerprint(group)? else {
            return Ok(());
        };
        std::fs::create_dir_all(&self.dir)?;
        let cl = group.classes()?;
        let file = CacheFile {
            version: FORMAT_VERSION,
            descriptor: group.descriptor().unwrap_or_default().to_string(),
            order: group.order(),
            class_reps: cl.reps.clone(),
            conductor: data.conductor,
            prime: data.prime,
            values: data
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.lift(data.conductor).to_strings()).collect())
                .collect(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = self.path_for(&format!("{fp}.tmp"));
        std::fs::write(&tmp, text)?;
        std::fs::rename(tmp, self.path_for(&fp))?;
        Ok(())
    }

    pub fn status(&self) -> Result<CacheStatus> {
        let mut files = Vec::new();
        if self.dir.exists() {
            for e in std::fs::read_dir(&self.dir)? {
                let e = e?;
                let path = e.path();
                if path.extension().is_some_and(|x| x == "json") {
                    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    files.push((stem, e.metadata()?.len()));
                }
            }
        }
        files.sort();
        Ok(CacheStatus {
            dir: self.dir.clone(),
            entries: files.len(),
            bytes: files.iter().map(|f| f.1).sum(),
            files,
        })
    }

    /// Removes every cache entry; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        if self.dir.exists() {
            for e in std::fs::read_dir(&self.dir)? {
                let p = e?.path();
                if p.extension().is_some_and(|x| x == "json") {
                    std::fs::remove_file(p)?;
                    n += 1;
                }
            }
        }
        Ok(n)
    }
}

//! On-disk form of `UmemuraCache`: versioned JSON with a SHA-256 per stored
//! polynomial.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arith::document::{serialize, PolyDoc};
use crate::arith::BiPoly;
use crate::umemura::{Method, RValue, UmemuraCache};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache schema version {found}, expected {expected}")]
    VersionMismatch { found: u64, expected: u32 },
    #[error("corrupt cache {path}: {reason}")]
    CorruptCache { path: PathBuf, reason: String },
    #[error("cache {path} cannot be extended: {reason}")]
    Conflict { path: PathBuf, reason: String },
}

#[derive(Serialize, Deserialize)]
struct SigmaDoc {
    n: usize,
    method: Method,
    poly: PolyDoc,
}

#[derive(Serialize, Deserialize)]
struct Checksums {
    entries: Vec<String>,
    sigmas: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    r: String,
    entries: Vec<PolyDoc>,
    sigmas: Vec<SigmaDoc>,
    checksums: Checksums,
}

fn checksum(p: &BiPoly) -> String {
    hex::encode(Sha256::digest(serialize(p).as_bytes()))
}

/// Canonical JSON text of a cache.
pub fn cache_to_json(cache: &UmemuraCache) -> String {
    let file = CacheFile {
        version: CACHE_VERSION,
        r: cache.r().to_string(),
        entries: cache.entries().iter().map(PolyDoc::from_poly).collect(),
        sigmas: cache.sigmas().map(|(n, p, method)| SigmaDoc { n, method, poly: PolyDoc::from_poly(p) }).collect(),
        checksums: Checksums {
            entries: cache.entries().iter().map(checksum).collect(),
            sigmas: cache.sigmas().map(|(_, p, _)| checksum(p)).collect(),
        },
    };
    serde_json::to_string_pretty(&file).expect("cache serializes")
}

pub fn cache_from_json(text: &str, path: &Path) -> Result<UmemuraCache, CacheError> {
    let corrupt = |reason: String| CacheError::CorruptCache { path: path.into(), reason };
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
    let version = value.get("version").and_then(|v| v.as_u64()).ok_or_else(|| corrupt("missing version".into()))?;
    if version != u64::from(CACHE_VERSION) {
        return Err(CacheError::VersionMismatch { found: version, expected: CACHE_VERSION });
    }
    let file: CacheFile = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;
    let r: RValue = file.r.parse().map_err(|e| corrupt(format!("r: {e}")))?;
    if file.checksums.entries.len() != file.entries.len() || file.checksums.sigmas.len() != file.sigmas.len() {
        return Err(corrupt("checksum count does not match".into()));
    }
    let mut cache = UmemuraCache::new(r);
    for (i, (doc, sum)) in file.entries.iter().zip(&file.checksums.entries).enumerate() {
        let p = doc.to_poly().map_err(|e| corrupt(format!("entry {i}: {e}")))?;
        if checksum(&p) != *sum {
            return Err(corrupt(format!("checksum of entry {i}")));
        }
        match cache.entries().get(i) {
            Some(known) if *known != p => return Err(corrupt(format!("entry {i} disagrees with a_{i}"))),
            Some(_) => {}
            None if i == cache.entries().len() => cache.push_entry(p),
            None => unreachable!("entries are pushed in order"),
        }
    }
    for (doc, sum) in file.sigmas.iter().zip(&file.checksums.sigmas) {
        let p = doc.poly.to_poly().map_err(|e| corrupt(format!("sigma_{}: {e}", doc.n)))?;
        if checksum(&p) != *sum {
            return Err(corrupt(format!("checksum of sigma_{}", doc.n)));
        }
        cache.insert_sigma(doc.n, p, doc.method).map_err(|e| corrupt(e.to_string()))?;
    }
    Ok(cache)
}

pub fn cache_load(path: &Path) -> Result<UmemuraCache, CacheError> {
    let text = fs::read_to_string(path).map_err(|source| CacheError::Io { path: path.into(), source })?;
    cache_from_json(&text, path)
}

/// Writes `cache`, first merging whatever is already stored at `path`.
/// Stored data is never dropped or replaced: a disagreement is a
/// `Conflict`. Returns the merged cache that was written.
pub fn cache_store(cache: &UmemuraCache, path: &Path) -> Result<UmemuraCache, CacheError> {
    let conflict = |reason: String| CacheError::Conflict { path: path.into(), reason };
    let mut merged = cache.clone();
    if path.exists() {
        let old = cache_load(path)?;
        if old.r() != cache.r() {
            return Err(conflict(format!("stored r = {}, new r = {}", old.r(), cache.r())));
        }
        let (a, b) = (old.entries(), cache.entries());
        let common = a.len().min(b.len());
        if a[..common] != b[..common] {
            return Err(conflict("entry sequences disagree".into()));
        }
        for p in &a[common..] {
            merged.push_entry(p.clone());
        }
        for (n, p, method) in old.sigmas() {
            merged.insert_sigma(n, p.clone(), method).map_err(|e| conflict(e.to_string()))?;
        }
    }
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CacheError::Io { path: dir.into(), source })?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, cache_to_json(&merged)).map_err(|source| CacheError::Io { path: tmp.clone(), source })?;
    fs::rename(&tmp, path).map_err(|source| CacheError::Io { path: path.into(), source })?;
    Ok(merged)
}

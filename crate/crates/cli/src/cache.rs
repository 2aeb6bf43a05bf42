//! Content-addressed on-disk cache of spectra and dressed points.
//!
//! An entry is a JSON file named by the SHA-256 of its canonical key. The
//! stored key is compared in full on every read, so a hash collision is a
//! miss. Unreadable entries are moved to `quarantine/` and treated as misses.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use fluxpulse_core::coupled::{CouplingMode, DirectSource, DressedPoint, PointSource, ResonatorParams, Truncation};
use fluxpulse_core::qubit::{fluxonium_spectrum, EnergyParams, FluxBias, SpectrumRecord};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Bumped whenever a cached value's meaning or layout changes.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    kind: String,
    key: Value,
    value: Value,
}

/// Hit/miss bookkeeping for one run.
#[derive(Debug, Default)]
pub struct CacheStats {
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
    pub quarantined: AtomicUsize,
    pub write_failures: AtomicUsize,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    schema: u32,
    pub stats: CacheStats,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        Self::with_schema(dir, CACHE_SCHEMA_VERSION)
    }

    pub fn with_schema(dir: impl Into<PathBuf>, schema: u32) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Self { dir, schema, stats: CacheStats::default() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// File that holds (or would hold) the entry for `key`.
    pub fn path_for<K: Serialize>(&self, kind: &str, key: &K) -> PathBuf {
        let canonical = serde_json::to_string(&(self.schema, kind, key)).expect("cache keys serialize");
        let digest = Sha256::digest(canonical.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get<K: Serialize, V: DeserializeOwned>(&self, kind: &str, key: &K) -> Option<V> {
        let path = self.path_for(kind, key);
        let found = match fs::read(&path) {
            Ok(bytes) => self.decode(&path, &bytes, kind, key),
            Err(_) => None,
        };
        let counter = if found.is_some() { &self.stats.hits } else { &self.stats.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    fn decode<K: Serialize, V: DeserializeOwned>(&self, path: &Path, bytes: &[u8], kind: &str, key: &K) -> Option<V> {
        let Ok(entry) = serde_json::from_slice::<Entry>(bytes) else {
            self.quarantine(path);
            return None;
        };
        let wanted = serde_json::to_value(key).ok()?;
        if entry.schema_version != self.schema || entry.kind != kind || entry.key != wanted {
            return None;
        }
        match serde_json::from_value(entry.value) {
            Ok(v) => Some(v),
            Err(_) => {
                self.quarantine(path);
                None
            }
        }
    }

    fn quarantine(&self, path: &Path) {
        let qdir = self.dir.join("quarantine");
        let moved =
            fs::create_dir_all(&qdir).and_then(|_| fs::rename(path, qdir.join(path.file_name().unwrap_or_default())));
        if moved.is_ok() {
            self.stats.quarantined.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// Publishes an entry by writing a temporary file and renaming it into
    /// place. Failures are counted, not fatal: the value is still returned
    /// to the caller.
    pub fn put<K: Serialize, V: Serialize>(&self, kind: &str, key: &K, value: &V) {
        if self.try_put(kind, key, value).is_err() {
            self.stats.write_failures.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn try_put<K: Serialize, V: Serialize>(&self, kind: &str, key: &K, value: &V) -> std::io::Result<()> {
        static SEQ: AtomicUsize = AtomicUsize::new(0);
        let entry = Entry {
            schema_version: self.schema,
            kind: kind.to_string(),
            key: serde_json::to_value(key)?,
            value: serde_json::to_value(value)?,
        };
        let path = self.path_for(kind, key);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            path.file_name().unwrap_or_default().to_string_lossy(),
            std::process::id(),
            SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

/// Everything that determines a dressed point.
#[derive(Debug, Serialize)]
struct PointKey<'a> {
    params: &'a EnergyParams<f64>,
    flux: f64,
    omega_r: f64,
    g: f64,
    mode: CouplingMode,
    trunc: &'a Truncation,
}

#[derive(Debug, Serialize)]
struct SpectrumKey<'a> {
    params: &'a EnergyParams<f64>,
    flux: f64,
    dim: usize,
}

/// Point source backed by the cache; counts the diagonalizations it runs.
pub struct CachedSource<'c> {
    direct: DirectSource<f64>,
    cache: Option<&'c Cache>,
    mode: CouplingMode,
    trunc: Truncation,
    eigensolves: &'c AtomicUsize,
}

impl<'c> CachedSource<'c> {
    pub fn new(
        params: EnergyParams<f64>,
        res: ResonatorParams<f64>,
        mode: CouplingMode,
        trunc: Truncation,
        cache: Option<&'c Cache>,
        eigensolves: &'c AtomicUsize,
    ) -> fluxpulse_core::Result<Self> {
        Ok(Self { direct: DirectSource::new(params, res, mode, trunc)?, cache, mode, trunc, eigensolves })
    }
}

impl PointSource<f64> for CachedSource<'_> {
    fn point(&self, params: EnergyParams<f64>, flux: FluxBias<f64>) -> fluxpulse_core::Result<DressedPoint<f64>> {
        let res = self.direct.resonator();
        let key = PointKey {
            params: &params,
            flux: flux.0,
            omega_r: res.omega_r,
            g: res.g,
            mode: self.mode,
            trunc: &self.trunc,
        };
        if let Some(hit) = self.cache.and_then(|c| c.get("dressed_point", &key)) {
            return Ok(hit);
        }
        // bare fluxonium plus coupled system
        self.eigensolves.fetch_add(2, Ordering::Relaxed);
        let point = self.direct.point(params, flux)?;
        if let Some(c) = self.cache {
            c.put("dressed_point", &key, &point);
        }
        Ok(point)
    }

    fn resonator(&self) -> &ResonatorParams<f64> {
        self.direct.resonator()
    }
}

/// Bare spectrum record, through the cache when one is given.
pub fn cached_spectrum(
    cache: Option<&Cache>,
    params: EnergyParams<f64>,
    flux: f64,
    dim: usize,
    eigensolves: &AtomicUsize,
) -> fluxpulse_core::Result<SpectrumRecord> {
    let key = SpectrumKey { params: &params, flux, dim };
    if let Some(hit) = cache.and_then(|c| c.get("spectrum", &key)) {
        return Ok(hit);
    }
    eigensolves.fetch_add(1, Ordering::Relaxed);
    let record = fluxonium_spectrum(params, FluxBias(flux), dim)?.to_record();
    if let Some(c) = cache {
        c.put("spectrum", &key, &record);
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn device() -> (EnergyParams<f64>, ResonatorParams<f64>) {
        (EnergyParams::from_ghz(4.75, 1.25, 1.5).unwrap(), ResonatorParams::from_ghz_mhz(7.0, 5.0, 50.0).unwrap())
    }

    #[test]
    fn warm_hit_equals_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let count = AtomicUsize::new(0);
        let (p, r) = device();
        let src =
            CachedSource::new(p, r, CouplingMode::LadderRwa, Truncation::default(), Some(&cache), &count).unwrap();
        let cold = src.point(p, FluxBias(0.641)).unwrap();
        assert_eq!(count.load(Ordering::Relaxed), 2);
        let warm = src.point(p, FluxBias(0.641)).unwrap();
        assert_eq!(count.load(Ordering::Relaxed), 2);
        assert_eq!(cold, warm);
        let direct = DirectSource::new(p, r, CouplingMode::LadderRwa, Truncation::default()).unwrap();
        assert_eq!(warm, direct.point(p, FluxBias(0.641)).unwrap());
        assert_eq!(cache.stats.hits.load(Ordering::Relaxed), 1);
    }

    #[test]
    fn schema_bump_invalidates() {
        let dir = tempfile::tempdir().unwrap();
        let v1 = Cache::with_schema(dir.path(), 1).unwrap();
        v1.put("x", &1u32, &"one");
        assert_eq!(v1.get::<_, String>("x", &1u32).as_deref(), Some("one"));
        let v2 = Cache::with_schema(dir.path(), 2).unwrap();
        assert_eq!(v2.get::<_, String>("x", &1u32), None);
    }

    #[test]
    fn mismatched_key_under_same_hash_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        cache.put("x", &2u32, &"two");
        // forge a collision: entry for key 2 stored where key 1 would live
        fs::copy(cache.path_for("x", &2u32), cache.path_for("x", &1u32)).unwrap();
        assert_eq!(cache.get::<_, String>("x", &1u32), None);
        assert_eq!(cache.get::<_, String>("x", &2u32).as_deref(), Some("two"));
    }

    #[test]
    fn corrupt_entry_is_quarantined() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let path = cache.path_for("x", &1u32);
        fs::write(&path, b"{not json").unwrap();
        assert_eq!(cache.get::<_, String>("x", &1u32), None);
        assert!(!path.exists());
        assert!(dir.path().join("quarantine").join(path.file_name().unwrap()).exists());
        assert_eq!(cache.stats.quarantined.load(Ordering::Relaxed), 1);
        cache.put("x", &1u32, &"again");
        assert_eq!(cache.get::<_, String>("x", &1u32).as_deref(), Some("again"));
    }

    #[test]
    fn spectrum_record_cached() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let count = AtomicUsize::new(0);
        let (p, _) = device();
        let a = cached_spectrum(Some(&cache), p, 0.5, 40, &count).unwrap();
        let b = cached_spectrum(Some(&cache), p, 0.5, 40, &count).unwrap();
        assert_eq!(a, b);
        assert_eq!(count.load(Ordering::Relaxed), 1);
    }
}

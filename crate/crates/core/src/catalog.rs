//! Every matroid on a small ground set, up to isomorphism.
//!
//! A matroid is determined by its bases, so enumeration walks, for each rank
//! `r`, the nonempty families of `r`-subsets and keeps those satisfying basis
//! exchange. Labeled matroids are then grouped by canonical key.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_key, IsoKey};
use crate::error::{Error, Result};
use crate::io::MatroidRecord;
use crate::matroid::{Matroid, SubsetMask};

pub const MAX_CATALOG_N: usize = 4;

/// Bumped whenever the cache layout or the canonical form changes.
pub const CACHE_VERSION: u32 = 1;

pub const CACHE_DIR_ENV: &str = "MATROID_HOPF_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    n: usize,
    classes: Vec<(IsoKey, Matroid)>,
    labeled_count: usize,
}

impl Catalog {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Classes in increasing key order, each with its canonical representative.
    pub fn classes(&self) -> &[(IsoKey, Matroid)] {
        &self.classes
    }

    pub fn keys(&self) -> impl Iterator<Item = &IsoKey> {
        self.classes.iter().map(|(k, _)| k)
    }

    pub fn matroids(&self) -> impl Iterator<Item = &Matroid> {
        self.classes.iter().map(|(_, m)| m)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of labeled matroids on `0..n`.
    pub fn labeled_count(&self) -> usize {
        self.labeled_count
    }

    fn cache_path(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("catalog-n{n}.jsonl"))
    }

    /// Writes the header line followed by one record per class.
    pub fn write_cache(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = Catalog::cache_path(dir, self.n);
        let tmp = path.with_extension("jsonl.tmp");
        {
            let mut file = fs::File::create(&tmp)?;
            let header = CacheHeader {
                version: CACHE_VERSION,
                n: self.n,
                count: self.classes.len(),
                labeled_count: self.labeled_count,
            };
            writeln!(file, "{}", serde_json::to_string(&header)?)?;
            for (_, m) in &self.classes {
                writeln!(file, "{}", serde_json::to_string(&MatroidRecord::from_matroid(m))?)?;
            }
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Reads a cache file; `Ok(None)` when it is absent or stale.
    pub fn read_cache(dir: &Path, n: usize) -> Result<Option<Catalog>> {
        let path = Catalog::cache_path(dir, n);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut lines = BufReader::new(file).lines();
        let header: CacheHeader = match lines.next() {
            Some(line) => serde_json::from_str(&line?)?,
            None => return Ok(None),
        };
        if header.version != CACHE_VERSION || header.n != n {
            return Ok(None);
        }
        let mut classes = BTreeMap::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record: MatroidRecord = serde_json::from_str(&line)?;
            let m = record.to_matroid()?;
            if m.n() != n {
                return Err(Error::Parse(format!("cache record of size {} in catalog for n = {n}", m.n())));
            }
            let key = canonical_key(&m)?;
            classes.insert(key.clone(), key.representative());
        }
        if classes.len() != header.count {
            return Ok(None);
        }
        Ok(Some(Catalog {
            n,
            classes: classes.into_iter().collect(),
            labeled_count: header.labeled_count,
        }))
    }

    /// Cached catalog if present, otherwise enumerated and written back.
    pub fn load_or_enumerate(n: usize, dir: Option<&Path>) -> Result<Catalog> {
        if let Some(dir) = dir {
            if let Some(hit) = Catalog::read_cache(dir, n)? {
                return Ok(hit);
            }
        }
        let catalog = enumerate(n)?;
        if let Some(dir) = dir {
            catalog.write_cache(dir)?;
        }
        Ok(catalog)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheHeader {
    version: u32,
    n: usize,
    count: usize,
    labeled_count: usize,
}

/// `$MATROID_HOPF_CACHE_DIR`, or a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => std::env::temp_dir().join("matroid-hopf-cache"),
    }
}

fn satisfies_basis_exchange(bases: &[SubsetMask]) -> bool {
    bases.iter().all(|&b1| {
        bases.iter().all(|&b2| {
            b1.difference(b2).elements().all(|x| {
                b2.difference(b1)
                    .elements()
                    .any(|y| bases.binary_search(&b1.without(x).with(y)).is_ok())
            })
        })
    })
}

fn matroids_of_rank(n: usize, rank: usize) -> Vec<Matroid> {
    let candidates: Vec<SubsetMask> = SubsetMask::full(n)
        .subsets()
        .filter(|s| s.len() == rank)
        .collect();
    let mut out = Vec::new();
    for choice in 1u64..(1u64 << candidates.len()) {
        let bases: Vec<SubsetMask> = (0..candidates.len())
            .filter(|i| choice & (1 << i) != 0)
            .map(|i| candidates[i])
            .collect();
        if !satisfies_basis_exchange(&bases) {
            continue;
        }
        let family = SubsetMask::full(n)
            .subsets()
            .filter(|s| bases.iter().any(|b| s.is_subset_of(*b)));
        out.push(Matroid::validate(n, family).expect("basis exchange implies the independence axioms"));
    }
    out
}

/// All isomorphism classes of matroids on an `n`-element set, `n <= 4`.
pub fn enumerate(n: usize) -> Result<Catalog> {
    if n > MAX_CATALOG_N {
        return Err(Error::CatalogTooLarge {
            n,
            limit: MAX_CATALOG_N,
        });
    }
    let labeled: Vec<Vec<Matroid>> = (0..=n).into_par_iter().map(|r| matroids_of_rank(n, r)).collect();
    let labeled_count = labeled.iter().map(Vec::len).sum();
    let mut classes = BTreeMap::new();
    for m in labeled.into_iter().flatten() {
        let key = canonical_key(&m)?;
        classes.entry(key.clone()).or_insert_with(|| key.representative());
    }
    Ok(Catalog {
        n,
        classes: classes.into_iter().collect(),
        labeled_count,
    })
}

/// Catalogs for `0..=max_n`.
pub fn enumerate_up_to(max_n: usize, cache_dir: Option<&Path>) -> Result<Vec<Catalog>> {
    (0..=max_n).map(|n| Catalog::load_or_enumerate(n, cache_dir)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_catalogs() {
        let c0 = enumerate(0).unwrap();
        assert_eq!(c0.len(), 1);
        assert_eq!(c0.classes()[0].1, Matroid::empty());
        let c1 = enumerate(1).unwrap();
        let names: Vec<String> = c1.keys().map(|k| k.to_string()).collect();
        assert_eq!(names, ["U_{0,1}", "U_{1,1}"]);
    }

    #[test]
    fn rejects_large_n() {
        assert_eq!(enumerate(5), Err(Error::CatalogTooLarge { n: 5, limit: 4 }));
    }

    #[test]
    fn uniform_matroids_appear_once() {
        for n in 0..=MAX_CATALOG_N {
            let catalog = enumerate(n).unwrap();
            for r in 0..=n {
                let key = canonical_key(&Matroid::uniform(r as i64, n).unwrap()).unwrap();
                assert_eq!(catalog.keys().filter(|k| **k == key).count(), 1);
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let catalog = enumerate(3).unwrap();
        catalog.write_cache(dir.path()).unwrap();
        assert_eq!(Catalog::read_cache(dir.path(), 3).unwrap(), Some(catalog.clone()));
        assert_eq!(Catalog::read_cache(dir.path(), 2).unwrap(), None);
        assert_eq!(Catalog::load_or_enumerate(3, Some(dir.path())).unwrap(), catalog);
    }

    #[test]
    fn stale_cache_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("catalog-n2.jsonl");
        fs::write(&path, "{\"version\":0,\"n\":2,\"count\":1,\"labeled_count\":1}\n").unwrap();
        assert_eq!(Catalog::read_cache(dir.path(), 2).unwrap(), None);
        let fresh = Catalog::load_or_enumerate(2, Some(dir.path())).unwrap();
        assert_eq!(fresh.len(), 4);
        assert_eq!(Catalog::read_cache(dir.path(), 2).unwrap(), Some(fresh));
    }
}

//! On-disk character table cache keyed by a content hash.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nilweight::{CharacterTable, Cyclotomic, PermGroup};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bump whenever the table algorithm or class ordering changes.
pub const ALGORITHM_VERSION: u32 = 1;

/// `(conductor, [(numerator, denominator)])`.
type StoredValue = (u32, Vec<(i64, i64)>);

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: String,
    order: u64,
    /// Per character, per class.
    rows: Vec<Vec<StoredValue>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// Present but unreadable, stale or failing validation; recomputed.
    Replaced,
}

pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<TableCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(TableCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hash of the algorithm version, degree, generators and the class representatives in table order.
    pub fn key(g: &PermGroup) -> nilweight::Result<String> {
        let mut h = Sha256::new();
        h.update(format!("nilweight-chartab\n{ALGORITHM_VERSION}\n{}\n", g.degree()));
        for p in g.generators() {
            h.update(format!("gen {p}\n"));
        }
        for c in &g.class_data()?.classes {
            h.update(format!("class {} {}\n", c.size, c.representative));
        }
        Ok(hex::encode(h.finalize()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Installs a validated cached table on `g`, or computes and stores one.
    pub fn load_or_compute(&self, g: &PermGroup) -> nilweight::Result<(Arc<CharacterTable>, CacheStatus)> {
        let key = Self::key(g)?;
        let path = self.path(&key);
        let mut status = CacheStatus::Miss;
        if let Ok(text) = fs::read_to_string(&path) {
            status = CacheStatus::Replaced;
            if let Some(rows) = decode(&text, &key, g.order()) {
                if let Ok(t) = g.install_character_table(rows) {
                    return Ok((t, CacheStatus::Hit));
                }
            }
        }
        let table = g.character_table()?;
        // a failed write only loses the cache entry
        let _ = self.store(&path, &key, &table);
        Ok((table, status))
    }

    fn store(&self, path: &Path, key: &str, table: &CharacterTable) -> std::io::Result<()> {
        let entry = Entry {
            version: ALGORITHM_VERSION,
            key: key.to_string(),
            order: table.group_order(),
            rows: table
                .irreducibles()
                .iter()
                .map(|chi| {
                    chi.values()
                        .iter()
                        .map(|v| (v.conductor(), v.coeffs().iter().map(|c| (*c.numer(), *c.denom())).collect()))
                        .collect()
                })
                .collect(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

fn decode(text: &str, key: &str, order: u64) -> Option<Vec<Vec<Cyclotomic>>> {
    let e: Entry = serde_json::from_str(text).ok()?;
    if e.version != ALGORITHM_VERSION || e.key != key || e.order != order {
        return None;
    }
    e.rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(n, cs)| {
                    let coeffs = cs.into_iter().map(|(a, b)| (b != 0).then(|| Rational64::new(a, b))).collect::<Option<Vec<_>>>()?;
                    Cyclotomic::from_coeffs(n, coeffs)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Arc<PermGroup> {
        PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap()
    }

    #[test]
    fn cold_then_warm() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let (cold, s) = cache.load_or_compute(&s4()).unwrap();
        assert_eq!(s, CacheStatus::Miss);
        let (warm, s) = cache.load_or_compute(&s4()).unwrap();
        assert_eq!(s, CacheStatus::Hit);
        let rows = |t: &CharacterTable| t.irreducibles().iter().map(|c| c.values().to_vec()).collect::<Vec<_>>();
        assert_eq!(rows(&cold), rows(&warm));
    }

    #[test]
    fn corrupt_and_stale_entries_are_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let g = s4();
        let key = TableCache::key(&g).unwrap();
        let path = cache.path(&key);
        cache.load_or_compute(&g).unwrap();
        let good = fs::read_to_string(&path).unwrap();

        fs::write(&path, good.replacen("[[1,[[1,1]]]", "[[1,[[2,1]]]", 1)).unwrap();
        let (_, s) = cache.load_or_compute(&s4()).unwrap();
        assert_eq!(s, CacheStatus::Replaced);

        fs::write(&path, good.replacen(&format!("\"version\":{ALGORITHM_VERSION}"), "\"version\":0", 1)).unwrap();
        let (_, s) = cache.load_or_compute(&s4()).unwrap();
        assert_eq!(s, CacheStatus::Replaced);

        fs::write(&path, "not json").unwrap();
        let (_, s) = cache.load_or_compute(&s4()).unwrap();
        assert_eq!(s, CacheStatus::Replaced);
        assert_eq!(fs::read_to_string(&path).unwrap(), good);
    }
}

//! On-disk cache of enumeration tables.
//!
//! Each cached table is stored as `table-<kind>-n<n>.json` holding the
//! table in its JSON form together with a SHA-256 checksum over the job
//! parameters and the table body. A file whose parameters or checksum do not
//! match is ignored and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use genus_core::combinatorics::{GenusTable, Kind};
use genus_core::records::SCHEMA_VERSION;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    checksum: String,
    table: GenusTable,
}

fn checksum(kind: Kind, n: usize, table_json: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("genus-table schema={SCHEMA_VERSION} kind={kind} n={n}\n").as_bytes());
    h.update(table_json.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn path(&self, kind: Kind, n: usize) -> PathBuf {
        self.dir.join(format!("table-{kind}-n{n}.json"))
    }

    /// The cached table, if a valid file exists.
    pub fn load(&self, kind: Kind, n: usize) -> Option<GenusTable> {
        let text = fs::read_to_string(self.path(kind, n)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.schema_version != SCHEMA_VERSION || file.table.kind() != kind || file.table.n() != n {
            return None;
        }
        let body = serde_json::to_string(&file.table).ok()?;
        (checksum(kind, n, &body) == file.checksum).then_some(file.table)
    }

    pub fn store(&self, table: &GenusTable) -> Result<()> {
        let body = serde_json::to_string(table)?;
        let file =
            CacheFile { schema_version: SCHEMA_VERSION, checksum: checksum(table.kind(), table.n(), &body), table: table.clone() };
        let path = self.path(table.kind(), table.n());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&file)?).with_context(|| format!("cannot write {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use genus_core::combinatorics::enumerate_genus_table;

    #[test]
    fn round_trip_and_tamper_detection() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let t = enumerate_genus_table(5, Kind::Permutation, 9).unwrap();
        assert!(cache.load(Kind::Permutation, 5).is_none());
        cache.store(&t).unwrap();
        assert_eq!(cache.load(Kind::Permutation, 5), Some(t));
        let path = cache.path(Kind::Permutation, 5);
        let text = fs::read_to_string(&path).unwrap().replacen("\"count\": 1", "\"count\": 2", 1);
        fs::write(&path, text).unwrap();
        assert!(cache.load(Kind::Permutation, 5).is_none());
    }
}

//! On-disk cache for generator degree tables, one JSON file per dimension,
//! keyed by engine version.
//!
//! Files that are missing, unreadable, or fail shape/version validation are
//! recomputed and overwritten. Values inside a well-formed file are trusted;
//! a tampered matrix will surface later as an invariant-violation when
//! classification hits an unsolvable system.

use std::fs;
use std::path::{Path, PathBuf};

use cobord::cobordism::DegreeTable;
use cobord::f2::F2Matrix;

use crate::failure::Failure;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn cache_path(dir: &Path, dim: u32) -> PathBuf {
    dir.join(format!("catalog-v{VERSION}-dim{dim}.json"))
}

pub fn load_or_compute_table(dim: u32, dir: &Path) -> Result<DegreeTable, Failure> {
    let path = cache_path(dir, dim);
    if let Some(table) = try_load(&path, dim) {
        return Ok(table);
    }
    let table = DegreeTable::compute(dim)?;
    if let Err(e) = store(&path, &table) {
        eprintln!("warning: could not write cache file {}: {e}", path.display());
    }
    Ok(table)
}

fn try_load(path: &Path, dim: u32) -> Option<DegreeTable> {
    let text = fs::read_to_string(path).ok()?;
    let value: serde_json::Value = serde_json::from_str(&text).ok()?;
    if value.get("version")?.as_str()? != VERSION {
        return None;
    }
    if value.get("dimension")?.as_u64()? != u64::from(dim) {
        return None;
    }
    let monomials: Vec<Vec<u32>> = value
        .get("monomials")?
        .as_array()?
        .iter()
        .map(|mono| {
            mono.as_array()?
                .iter()
                .map(|v| v.as_u64().and_then(|x| u32::try_from(x).ok()))
                .collect()
        })
        .collect::<Option<_>>()?;
    let rows = value.get("matrix")?.as_array()?;
    let row_len = monomials.len();
    let mut matrix = F2Matrix::zero(rows.len(), row_len);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array()?;
        if row.len() != row_len {
            return None;
        }
        for (c, bit) in row.iter().enumerate() {
            match bit.as_u64()? {
                0 => {}
                1 => matrix.set(r, c, true),
                _ => return None,
            }
        }
    }
    DegreeTable::from_parts(dim, monomials, matrix).ok()
}

fn store(path: &Path, table: &DegreeTable) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let matrix: Vec<Vec<u8>> = (0..table.matrix().rows())
        .map(|r| {
            (0..table.matrix().cols())
                .map(|c| u8::from(table.matrix().get(r, c)))
                .collect()
        })
        .collect();
    let value = serde_json::json!({
        "version": VERSION,
        "dimension": table.dimension(),
        "monomials": table.monomials(),
        "matrix": matrix,
    });
    fs::write(path, serde_json::to_string(&value)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_the_cache_file() {
        let dir = std::env::temp_dir().join(format!("cobord-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let first = load_or_compute_table(4, &dir).unwrap();
        assert!(cache_path(&dir, 4).exists());
        let second = load_or_compute_table(4, &dir).unwrap();
        assert_eq!(first.monomials(), second.monomials());
        assert_eq!(first.matrix(), second.matrix());
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn corrupt_files_are_recomputed() {
        let dir = std::env::temp_dir().join(format!("cobord-cache-bad-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        fs::write(cache_path(&dir, 2), "not json at all").unwrap();
        let table = load_or_compute_table(2, &dir).unwrap();
        assert_eq!(table.dimension(), 2);
        // the bad file was replaced with a valid one
        let reloaded = try_load(&cache_path(&dir, 2), 2);
        assert!(reloaded.is_some());
        let _ = fs::remove_dir_all(&dir);
    }
}

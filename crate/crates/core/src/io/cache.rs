//! Content-addressed on-disk cache of graded pieces.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graded::{GradedPiece, HomogeneousIdeal, PieceRecord, PieceStore};

use super::input::sha256_hex;

/// Bumped whenever the monomial order or the record layout changes.
pub const ORDER_VERSION: &str = "grlex-v1";

/// Stores one JSON file per `(ideal, m)` under a directory. Writes go to a
/// temporary file that is renamed into place, so readers never see a
/// partial record and concurrent writers of the same key are harmless.
#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    counter: AtomicU64,
}

impl DiskCache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
        Ok(DiskCache { dir: dir.to_path_buf(), counter: AtomicU64::new(0) })
    }

    pub fn key(ideal: &HomogeneousIdeal, m: u32) -> String {
        sha256_hex(format!("{}\n{m}\n{ORDER_VERSION}", ideal.canonical_json()).as_bytes())
    }

    pub fn path(&self, ideal: &HomogeneousIdeal, m: u32) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(ideal, m)))
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".tmp-{}-{n}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    }
}

impl PieceStore for DiskCache {
    fn load(&self, ideal: &HomogeneousIdeal, m: u32) -> Option<GradedPiece> {
        let bytes = fs::read(self.path(ideal, m)).ok()?;
        let rec: PieceRecord = serde_json::from_slice(&bytes).ok()?;
        if rec.degree != m || rec.num_vars != ideal.num_vars() {
            return None;
        }
        GradedPiece::from_record(rec).ok()
    }

    fn store(&self, ideal: &HomogeneousIdeal, m: u32, piece: &GradedPiece) {
        let path = self.path(ideal, m);
        if path.exists() {
            return;
        }
        if let Ok(bytes) = serde_json::to_vec(&piece.to_record()) {
            // The cache is an accelerator; a failed write only costs a
            // recomputation later.
            let _ = self.write_atomic(&path, &bytes);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::ideal_degree_piece;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let conic = HomogeneousIdeal::parse(3, &["z0*z2 - z1^2"]).unwrap();
        assert!(cache.load(&conic, 3).is_none());
        let p = ideal_degree_piece(&conic, 3);
        cache.store(&conic, 3, &p);
        assert_eq!(cache.load(&conic, 3).unwrap(), p);
        fs::write(cache.path(&conic, 3), b"{not json").unwrap();
        assert!(cache.load(&conic, 3).is_none());
        assert_ne!(DiskCache::key(&conic, 3), DiskCache::key(&conic, 4));
    }
}

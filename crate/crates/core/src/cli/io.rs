use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::format::{read_graver, write_graver};
use crate::graver::{compute_graver, matrix_sha, CompletionLimits, GraverBasis};
use crate::linalg::IntMatrix;

/// Environment variable naming the Graver cache directory.
pub const CACHE_DIR_ENV: &str = "ROBUSTIP_CACHE_DIR";

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn cache_path(instance_path: &Path, a: &IntMatrix) -> PathBuf {
    let dir = match std::env::var_os(CACHE_DIR_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => instance_path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    dir.join(format!("{}.graver.json", matrix_sha(a)))
}

/// Whether the basis came from the cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Computed,
}

/// Loads the cached basis for `a`, or computes and caches it. A cache file
/// that does not parse or belongs to another matrix is recomputed.
pub fn auto_graver(instance_path: &Path, a: &IntMatrix, limits: CompletionLimits) -> Result<(GraverBasis, CacheOutcome, PathBuf)> {
    let path = cache_path(instance_path, a);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(g) = read_graver(&text) {
            if g.matches(a) {
                return Ok((g, CacheOutcome::Hit, path));
            }
        }
    }
    let g = compute_graver(a, limits)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    write_atomic(&path, &write_graver(&g))?;
    Ok((g, CacheOutcome::Computed, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

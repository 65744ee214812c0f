//! On-disk cache for Frobenius bases, the one expensive computation every
//! series subcommand shares.
//!
//! Files are keyed by `(operator fingerprint, truncation order)` and named
//! `frobenius-{hash16}-k{K}.json`. A cached basis of order K′ serves any
//! request of order K ≤ K′ by truncation (the coefficients of a truncated
//! series are a prefix of the longer one's). Every file carries a content
//! hash over its numeric payload:
//!
//! * unreadable, malformed, or hash-mismatched files are ignored and the
//!   basis is recomputed silently — ordinary corruption is not an error;
//! * a file whose content hash *matches* but whose values fail the
//!   operator-annihilation audit is evidence of deliberate, consistent
//!   tampering, and aborts with exit code 2 rather than silently masking
//!   an integrity breach.
//!
//! Writers serialize through a lock file (`create_new`); a lock older than
//! ten seconds is presumed abandoned and taken over. Writes go to a
//! temporary file first and are renamed into place, so readers never see a
//! partial file and need no lock.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant, SystemTime};

use mirrorkit_core::exact_series::{LogSeries, Rational, TruncatedSeries};
use mirrorkit_core::picard_fuchs::{
    apply_operator, frobenius_basis_of, FrobeniusSolution, OdeOperator,
};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::envelope::rational_string;

/// A command-level failure: message for stderr plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit: i32,
    pub message: String,
}

impl Failure {
    pub fn check(message: impl Into<String>) -> Self {
        Failure {
            exit: 2,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            exit: 1,
            message: message.into(),
        }
    }
}

/// Resolves the cache directory: the `MIRRORKIT_CACHE` environment variable
/// overrides everything, then the `--cache-dir` flag, then a fixed
/// directory under the system temp dir.
pub fn resolve_cache_dir(flag: Option<&Path>) -> PathBuf {
    if let Ok(dir) = std::env::var("MIRRORKIT_CACHE") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    std::env::temp_dir().join("mirrorkit-cache")
}

const LOCK_STALE: Duration = Duration::from_secs(10);

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: String,
    operator: String,
    order: usize,
    /// `solutions[j][i][n]`: coefficient of z^n in part i (the series
    /// multiplying log^i z / i!) of solution j, as an exact decimal string.
    solutions: Vec<Vec<Vec<String>>>,
    content_hash: String,
}

/// Stable fingerprint of an operator: a hash over its exact coefficient
/// polynomials.
pub fn operator_fingerprint(l: &OdeOperator) -> String {
    let mut hasher = Sha256::new();
    for k in 0..=l.degree() {
        hasher.update(b"|");
        for c in l.coeff(k).coeffs() {
            hasher.update(c.numer().to_string().as_bytes());
            hasher.update(b"/");
            hasher.update(c.denom().to_string().as_bytes());
            hasher.update(b";");
        }
    }
    hex(&hasher.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn content_digest(operator: &str, order: usize, solutions: &[Vec<Vec<String>>]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(operator.as_bytes());
    hasher.update(order.to_string().as_bytes());
    for sol in solutions {
        for part in sol {
            for c in part {
                hasher.update(c.as_bytes());
                hasher.update(b",");
            }
            hasher.update(b";");
        }
        hasher.update(b"#");
    }
    hex(&hasher.finalize())
}

fn cache_path(dir: &Path, hash16: &str, k: usize) -> PathBuf {
    dir.join(format!("frobenius-{hash16}-k{k}.json"))
}

/// The Frobenius basis of the operator at order `k`, served from the cache
/// when possible.
///
/// Returns `Err` only on evidence of consistent cache tampering; every
/// other cache problem falls back to recomputation.
pub fn frobenius_basis_cached(
    dir: &Path,
    l: &OdeOperator,
    k: usize,
) -> Result<Vec<FrobeniusSolution>, Failure> {
    assert!(k >= 1, "callers clamp the basis order to at least 1");
    let fingerprint = operator_fingerprint(l);
    let hash16 = &fingerprint[..16];

    for (path, stored_order) in candidate_files(dir, hash16, k) {
        match try_load(&path, l, &fingerprint, stored_order, k) {
            LoadOutcome::Served(basis) => return Ok(basis),
            LoadOutcome::Corrupt => continue,
            LoadOutcome::Tampered(message) => return Err(Failure::check(message)),
        }
    }

    let basis = frobenius_basis_of_checked(l, k)?;
    store(dir, hash16, &fingerprint, k, &basis);
    Ok(basis)
}

fn frobenius_basis_of_checked(
    l: &OdeOperator,
    k: usize,
) -> Result<Vec<FrobeniusSolution>, Failure> {
    frobenius_basis_of(l, k).map_err(|e| Failure::check(format!("period computation failed: {e}")))
}

/// Cache files able to serve order `k`, cheapest (lowest stored order)
/// first.
fn candidate_files(dir: &Path, hash16: &str, k: usize) -> Vec<(PathBuf, usize)> {
    let mut found = Vec::new();
    let Ok(entries) = fs::read_dir(dir) else {
        return found;
    };
    let prefix = format!("frobenius-{hash16}-k");
    for entry in entries.flatten() {
        let name = entry.file_name();
        let Some(name) = name.to_str() else { continue };
        let Some(rest) = name.strip_prefix(&prefix) else {
            continue;
        };
        let Some(order_text) = rest.strip_suffix(".json") else {
            continue;
        };
        let Ok(stored_order) = order_text.parse::<usize>() else {
            continue;
        };
        if stored_order >= k {
            found.push((entry.path(), stored_order));
        }
    }
    found.sort_by_key(|&(_, order)| order);
    found
}

enum LoadOutcome {
    Served(Vec<FrobeniusSolution>),
    Corrupt,
    Tampered(String),
}

fn try_load(
    path: &Path,
    l: &OdeOperator,
    fingerprint: &str,
    stored_order: usize,
    k: usize,
) -> LoadOutcome {
    let Ok(body) = fs::read_to_string(path) else {
        return LoadOutcome::Corrupt;
    };
    let Ok(file) = serde_json::from_str::<CacheFile>(&body) else {
        return LoadOutcome::Corrupt;
    };
    if file.operator != fingerprint || file.order != stored_order {
        return LoadOutcome::Corrupt;
    }
    if file.content_hash != content_digest(&file.operator, file.order, &file.solutions) {
        return LoadOutcome::Corrupt;
    }

    // Shape: d solutions, solution j carrying parts 0..=j of full length.
    let d = l.degree();
    if file.solutions.len() != d {
        return LoadOutcome::Corrupt;
    }
    let mut basis = Vec::with_capacity(d);
    for (j, parts_text) in file.solutions.iter().enumerate() {
        if parts_text.len() != j + 1 {
            return LoadOutcome::Corrupt;
        }
        let mut parts = Vec::with_capacity(j + 1);
        for part_text in parts_text {
            if part_text.len() != stored_order + 1 {
                return LoadOutcome::Corrupt;
            }
            let mut coeffs = Vec::with_capacity(k + 1);
            for text in &part_text[..=k] {
                let Ok(c) = text.parse::<Rational>() else {
                    return LoadOutcome::Corrupt;
                };
                coeffs.push(c);
            }
            parts.push(TruncatedSeries::new(k, coeffs));
        }
        basis.push(FrobeniusSolution {
            depth: j,
            value: LogSeries::new(parts),
            normalized: true,
        });
    }

    // The file is internally consistent; now audit the mathematics. A
    // failure here means the payload and its hash were rewritten together.
    for (j, sol) in basis.iter().enumerate() {
        let normalized = sol.value.parts().iter().enumerate().all(|(i, p)| {
            if i == j {
                p.constant_term().is_one()
            } else {
                p.constant_term().is_zero()
            }
        });
        if !normalized || !apply_operator(l, &sol.value).is_zero() {
            return LoadOutcome::Tampered(format!(
                "cache corruption detected: {} carries a valid content hash but \
                 solution {j} fails the operator-annihilation audit; refusing to \
                 serve or overwrite it — delete the file to recompute",
                path.display()
            ));
        }
    }
    LoadOutcome::Served(basis)
}

fn store(dir: &Path, hash16: &str, fingerprint: &str, k: usize, basis: &[FrobeniusSolution]) {
    // Caching is an optimization: any failure below abandons the write and
    // the computed basis is simply returned uncached.
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let solutions: Vec<Vec<Vec<String>>> = basis
        .iter()
        .map(|sol| {
            sol.value
                .parts()
                .iter()
                .map(|p| p.coeffs().iter().map(rational_string).collect())
                .collect()
        })
        .collect();
    let file = CacheFile {
        version: env!("CARGO_PKG_VERSION").to_string(),
        operator: fingerprint.to_string(),
        order: k,
        content_hash: content_digest(fingerprint, k, &solutions),
        solutions,
    };
    let path = cache_path(dir, hash16, k);
    let Some(_lock) = LockGuard::acquire(&path.with_extension("lock")) else {
        return;
    };
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    let Ok(mut handle) = fs::File::create(&tmp) else {
        return;
    };
    let body = serde_json::to_string_pretty(&file).expect("cache serialization cannot fail");
    if handle.write_all(body.as_bytes()).is_err() {
        let _ = fs::remove_file(&tmp);
        return;
    }
    drop(handle);
    if fs::rename(&tmp, &path).is_err() {
        let _ = fs::remove_file(&tmp);
    }
}

/// Exclusive advisory lock via `create_new`; stale locks (older than ten
/// seconds) are broken and taken over.
struct LockGuard {
    path: PathBuf,
}

impl LockGuard {
    fn acquire(path: &Path) -> Option<LockGuard> {
        let started = Instant::now();
        loop {
            match fs::OpenOptions::new().write(true).create_new(true).open(path) {
                Ok(_) => {
                    return Some(LockGuard {
                        path: path.to_path_buf(),
                    })
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if lock_is_stale(path) || started.elapsed() > LOCK_STALE {
                        let _ = fs::remove_file(path);
                        continue;
                    }
                    std::thread::sleep(Duration::from_millis(50));
                }
                Err(_) => return None,
            }
        }
    }
}

fn lock_is_stale(path: &Path) -> bool {
    let Ok(meta) = fs::metadata(path) else {
        // Vanished between the failed create and now; retry immediately.
        return true;
    };
    match meta.modified() {
        Ok(modified) => match SystemTime::now().duration_since(modified) {
            Ok(age) => age > LOCK_STALE,
            Err(_) => false, // lock mtime in the future: treat as fresh
        },
        Err(_) => false,
    }
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mirrorkit_core::picard_fuchs::{frobenius_basis, pf_operator};

    fn tempdir() -> tempfile::TempDir {
        tempfile::tempdir().expect("temp dir")
    }

    #[test]
    fn cache_round_trip_serves_identical_data() {
        let dir = tempdir();
        let l = pf_operator();
        let fresh = frobenius_basis_cached(dir.path(), &l, 6).unwrap();
        assert_eq!(fresh, frobenius_basis(6).unwrap());

        // Second call is served from disk; the payload must be identical.
        let served = frobenius_basis_cached(dir.path(), &l, 6).unwrap();
        assert_eq!(served, fresh);

        let files: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        assert_eq!(files.len(), 1);
        assert!(files[0].starts_with("frobenius-"));
        assert!(files[0].ends_with("-k6.json"));
    }

    #[test]
    fn higher_order_files_serve_lower_requests_by_truncation() {
        let dir = tempdir();
        let l = pf_operator();
        frobenius_basis_cached(dir.path(), &l, 8).unwrap();

        let served = frobenius_basis_cached(dir.path(), &l, 3).unwrap();
        assert_eq!(served, frobenius_basis(3).unwrap());
        assert_eq!(served[0].value.order(), 3);

        // Truncation serving must not create a second file.
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn garbage_files_are_recomputed_silently() {
        let dir = tempdir();
        let l = pf_operator();
        frobenius_basis_cached(dir.path(), &l, 4).unwrap();
        let path = candidate_files(dir.path(), &operator_fingerprint(&l)[..16], 4)[0]
            .0
            .clone();

        fs::write(&path, "not json at all {{{").unwrap();
        let basis = frobenius_basis_cached(dir.path(), &l, 4).unwrap();
        assert_eq!(basis, frobenius_basis(4).unwrap());
        // The recompute also rewrote the broken file in place.
        let rewritten = fs::read_to_string(&path).unwrap();
        assert!(serde_json::from_str::<CacheFile>(&rewritten).is_ok());
    }

    #[test]
    fn value_edits_without_hash_fixup_are_recomputed_silently() {
        let dir = tempdir();
        let l = pf_operator();
        frobenius_basis_cached(dir.path(), &l, 4).unwrap();
        let path = candidate_files(dir.path(), &operator_fingerprint(&l)[..16], 4)[0]
            .0
            .clone();

        let mut file: CacheFile =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        file.solutions[0][0][1] = "121".to_string(); // true value is 120
        fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

        let basis = frobenius_basis_cached(dir.path(), &l, 4).unwrap();
        assert_eq!(basis, frobenius_basis(4).unwrap());
    }

    #[test]
    fn consistent_tampering_is_reported_as_corruption() {
        let dir = tempdir();
        let l = pf_operator();
        frobenius_basis_cached(dir.path(), &l, 4).unwrap();
        let path = candidate_files(dir.path(), &operator_fingerprint(&l)[..16], 4)[0]
            .0
            .clone();

        let mut file: CacheFile =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        file.solutions[0][0][1] = "121".to_string();
        file.content_hash = content_digest(&file.operator, file.order, &file.solutions);
        fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

        let err = frobenius_basis_cached(dir.path(), &l, 4).unwrap_err();
        assert_eq!(err.exit, 2);
        assert!(err.message.contains("cache corruption detected"));
        assert!(err.message.contains("annihilation"));
    }

    #[test]
    fn stale_locks_are_broken_and_guards_clean_up() {
        let dir = tempdir();
        let lock = dir.path().join("frobenius-test-k4.lock");
        fs::write(&lock, "").unwrap();
        assert!(!lock_is_stale(&lock));

        // Backdate the lock past the staleness horizon; acquisition must
        // break it promptly instead of waiting out the full window.
        let handle = fs::OpenOptions::new().write(true).open(&lock).unwrap();
        let backdated = SystemTime::now() - LOCK_STALE - Duration::from_secs(5);
        handle
            .set_times(fs::FileTimes::new().set_modified(backdated))
            .unwrap();
        drop(handle);
        assert!(lock_is_stale(&lock));

        let started = Instant::now();
        let guard = LockGuard::acquire(&lock).unwrap();
        assert!(started.elapsed() < Duration::from_secs(2));
        drop(guard);
        assert!(!lock.exists());
    }

    #[test]
    fn unwritable_cache_directories_degrade_to_plain_computation() {
        let dir = PathBuf::from("/proc/definitely-not-writable/mirrorkit");
        let l = pf_operator();
        let basis = frobenius_basis_cached(&dir, &l, 3).unwrap();
        assert_eq!(basis, frobenius_basis(3).unwrap());
    }

    #[test]
    fn fingerprints_separate_operators() {
        let l = pf_operator();
        let fp = operator_fingerprint(&l);
        assert_eq!(fp.len(), 64);
        assert_eq!(fp, operator_fingerprint(&pf_operator()));

        let other = OdeOperator::new(vec![
            TruncatedSeries::from_i64(1, &[0, -1]),
            TruncatedSeries::from_i64(1, &[0, 0]),
            TruncatedSeries::from_i64(1, &[0, 0]),
            TruncatedSeries::from_i64(1, &[0, 0]),
            TruncatedSeries::from_i64(1, &[1, 0]),
        ]);
        assert_ne!(fp, operator_fingerprint(&other));
    }
}

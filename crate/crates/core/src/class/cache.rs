//! Append-only count cache: one `basis-hash,n,count` line per known count.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{ClassError, Enumerator, PatternBasis};

pub struct CountCache {
    file: PathBuf,
}

impl CountCache {
    pub const FILE_NAME: &'static str = "counts.csv";

    pub fn open(dir: &Path) -> Result<Self, ClassError> {
        fs::create_dir_all(dir)
            .map_err(|e| ClassError::Cache(format!("{}: {e}", dir.display())))?;
        Ok(CountCache {
            file: dir.join(Self::FILE_NAME),
        })
    }

    pub fn path(&self) -> &Path {
        &self.file
    }

    /// Cached counts for `basis`, by n. Malformed lines are skipped.
    pub fn load(&self, basis: &PatternBasis) -> Result<BTreeMap<usize, u64>, ClassError> {
        let mut out = BTreeMap::new();
        let text = match fs::read_to_string(&self.file) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(ClassError::Cache(e.to_string())),
        };
        let key = basis.hash_hex();
        for line in text.lines() {
            let mut parts = line.split(',');
            let (Some(h), Some(n), Some(c), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                continue;
            };
            if h != key {
                continue;
            }
            if let (Ok(n), Ok(c)) = (n.trim().parse(), c.trim().parse()) {
                out.insert(n, c);
            }
        }
        Ok(out)
    }

    pub fn store(&self, basis: &PatternBasis, counts: &[(usize, u64)]) -> Result<(), ClassError> {
        let key = basis.hash_hex();
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.file)
            .map_err(|e| ClassError::Cache(e.to_string()))?;
        for (n, c) in counts {
            writeln!(f, "{key},{n},{c}").map_err(|e| ClassError::Cache(e.to_string()))?;
        }
        Ok(())
    }

    /// Counts to `max_n`, enumerating only when some length is missing.
    pub fn count(&self, enumerator: &Enumerator, max_n: usize) -> Result<Vec<u64>, ClassError> {
        let known = self.load(enumerator.basis())?;
        if (0..=max_n).all(|n| known.contains_key(&n)) {
            return Ok((0..=max_n).map(|n| known[&n]).collect());
        }
        let counts = enumerator.counts(max_n)?;
        let fresh: Vec<(usize, u64)> = counts
            .iter()
            .enumerate()
            .filter(|(n, _)| !known.contains_key(n))
            .map(|(n, &c)| (n, c))
            .collect();
        self.store(enumerator.basis(), &fresh)?;
        Ok(counts)
    }
}

//! Pattern classes: bases, exhaustive enumeration, refined counts, simples.

mod cache;
mod enumerate;
mod refine;
mod simples;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::perm::{parse_permutation, PermError, Permutation};

pub use cache::CountCache;
pub use enumerate::{count_class, enumerate_class, ClassLab, Enumerator, Levels, DEFAULT_CAPACITY};
pub use refine::{refined_count, ExportFormat, Filter, RefinedCountTable, Stat};
pub use simples::{enumerate_simples, generate_t};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("basis must contain at least one pattern")]
    EmptyBasis,
    #[error("patterns must be nonempty")]
    EmptyPattern,
    #[error("class size at n = {n} exceeds the capacity of {cap} permutations")]
    Capacity { n: usize, cap: usize },
    #[error("unknown statistic {0:?}")]
    UnknownStat(String),
    #[error("unknown filter {0:?}")]
    UnknownFilter(String),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("export: {0}")]
    Export(String),
}

/// A finite set of forbidden patterns, normalized: no duplicates, no pattern
/// containing another, sorted by length then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternBasis {
    patterns: Vec<Permutation>,
}

impl PatternBasis {
    pub fn new<I>(patterns: I) -> Result<Self, ClassError>
    where
        I: IntoIterator<Item = Permutation>,
    {
        let mut ps: Vec<Permutation> = patterns.into_iter().collect();
        if ps.is_empty() {
            return Err(ClassError::EmptyBasis);
        }
        if ps.iter().any(Permutation::is_empty) {
            return Err(ClassError::EmptyPattern);
        }
        ps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        ps.dedup();
        let mut kept: Vec<Permutation> = Vec::with_capacity(ps.len());
        for p in ps {
            // shorter patterns come first, so only they can dominate
            if !kept.iter().any(|q| p.contains(q)) {
                kept.push(p);
            }
        }
        Ok(PatternBasis { patterns: kept })
    }

    /// Parses a basis: comma-separated digit patterns, or `;`-separated
    /// patterns each in either permutation format.
    pub fn parse(text: &str) -> Result<Self, ClassError> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains(';') {
            text.split(';').collect()
        } else {
            text.split(',').collect()
        };
        let mut patterns = Vec::new();
        for t in tokens {
            let t = t.trim();
            if t.is_empty() {
                return Err(if text.is_empty() {
                    ClassError::EmptyBasis
                } else {
                    PermError::Malformed(t.to_string()).into()
                });
            }
            patterns.push(parse_permutation(t)?);
        }
        Self::new(patterns)
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn min_pattern_len(&self) -> usize {
        self.patterns
            .iter()
            .map(Permutation::len)
            .min()
            .unwrap_or(0)
    }

    /// This basis with one more pattern.
    pub fn with(&self, extra: Permutation) -> Result<Self, ClassError> {
        Self::new(self.patterns.iter().cloned().chain(std::iter::once(extra)))
    }

    pub fn admits(&self, p: &Permutation) -> bool {
        p.avoids_all(&self.patterns)
    }

    /// Hex SHA-256 of the canonical text form; used as the cache key.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Av(2143, 3142, τ).
    pub fn c(tau: &Permutation) -> Result<Self, ClassError> {
        Self::new([
            crate::perm::perm("2143"),
            crate::perm::perm("3142"),
            tau.clone(),
        ])
    }
}

impl fmt::Display for PatternBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.patterns.iter().any(|p| p.len() > 9) {
            ";"
        } else {
            ","
        };
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for PatternBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Av({self})")
    }
}

impl FromStr for PatternBasis {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for PatternBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PatternBasis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    #[test]
    fn normalizes() {
        let b = PatternBasis::parse("3142,2143,2143,21435").unwrap();
        assert_eq!(b.patterns(), &[perm("2143"), perm("3142")]);
        let b = PatternBasis::parse("254613,12").unwrap();
        assert_eq!(b.patterns(), &[perm("12")]);
        let b = PatternBasis::parse("4132;3142;2143").unwrap();
        assert_eq!(b.to_string(), "2143,3142,4132");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(PatternBasis::parse(""), Err(ClassError::EmptyBasis));
        assert!(PatternBasis::parse("2143,,3142").is_err());
        assert!(PatternBasis::parse("2414").is_err());
        let long = PatternBasis::parse("10,1,2,3,4,5,6,7,8,9;21").unwrap();
        assert_eq!(long.to_string(), "21");
        let long = PatternBasis::parse("1,3,2,4,5,6,7,8,9,10;3142").unwrap();
        assert_eq!(long.len(), 2);
        assert_eq!(PatternBasis::parse(&long.to_string()).unwrap(), long);
    }

    #[test]
    fn hash_is_stable_under_reordering() {
        let a = PatternBasis::parse("2143,3142,254613").unwrap();
        let b = PatternBasis::parse("254613,3142,2143").unwrap();
        assert_eq!(a.hash_hex(), b.hash_hex());
        assert_eq!(a.hash_hex().len(), 64);
    }
}

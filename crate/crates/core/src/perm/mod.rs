//! Permutations in one-line notation and the pure operations on them.
//!
//! Positions reported through [`IndexSet`] and [`Interval`] are 1-based, the
//! way permutations are usually written; the underlying storage is 0-based.

mod contain;
mod decomp;
mod ops;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use contain::{contains, contains_through, PatternPlan};
pub use decomp::{Deflation, Interval};
pub use ops::{direct_sum, extraction, inflate, skew_sum};

/// Errors raised when building or combining permutations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("malformed token {0:?}")]
    Malformed(String),
    #[error("non-positive value {0:?}")]
    NonPositive(String),
    #[error("duplicate value {0}")]
    Duplicate(u32),
    #[error("missing value {0}")]
    Missing(u32),
    #[error("digit form holds at most 9 entries, got {0:?}; use the comma-separated form")]
    DigitFormTooLong(String),
    #[error("value {0} exceeds the supported range")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A permutation of `{1, …, n}` in one-line notation. Length 0 is the empty
/// permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    values: Vec<u16>,
}

/// Strictly increasing 1-based positions of some host permutation.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.iter().all(|&i| i >= 1));
        IndexSet(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl From<&[usize]> for IndexSet {
    fn from(v: &[usize]) -> Self {
        IndexSet::new(v.to_vec())
    }
}

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u16>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 {
                return Err(PermError::NonPositive(v.to_string()));
            }
            let vi = v as usize;
            if vi > n {
                // the smallest value that cannot be present is the one reported
                let missing = (1..=n)
                    .find(|&m| !values.contains(&(m as u16)))
                    .unwrap_or(n);
                return Err(PermError::Missing(missing as u32));
            }
            if seen[vi] {
                return Err(PermError::Duplicate(v as u32));
            }
            seen[vi] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u16>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u16).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n as u16).rev().collect(),
        }
    }

    /// The permutation order-isomorphic to `seq` (distinct values of any type).
    pub fn standardize<T: Ord>(seq: &[T]) -> Self {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
        let mut values = vec![0u16; seq.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank as u16 + 1;
        }
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u16> {
        self.values
    }

    /// Value at a 1-based position.
    pub fn at(&self, position: usize) -> u16 {
        self.values[position - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn is_increasing(&self) -> bool {
        self.is_identity()
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains(self, pattern)
    }

    /// True when no pattern in `basis` occurs.
    pub fn avoids_all<'a, I>(&self, basis: I) -> bool
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        basis.into_iter().all(|p| !contains(self, p))
    }

    pub fn lr_maxima(&self) -> IndexSet {
        let mut out = Vec::new();
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > best {
                best = v;
                out.push(i + 1);
            }
        }
        IndexSet(out)
    }

    pub fn lr_minima(&self) -> IndexSet {
        let mut out = Vec::new();
        let mut best = u16::MAX;
        for (i, &v) in self.values.iter().enumerate() {
            if v < best {
                best = v;
                out.push(i + 1);
            }
        }
        IndexSet(out)
    }

    /// ℓ(π): length of the increasing prefix.
    pub fn leading_maxima_count(&self) -> usize {
        if self.values.is_empty() {
            return 0;
        }
        1 + self.values.windows(2).take_while(|w| w[0] < w[1]).count()
    }

    /// LR-maxima that are also descents.
    pub fn horizontal_gaps(&self) -> IndexSet {
        let lr = self.lr_maxima();
        let n = self.len();
        IndexSet(
            lr.iter()
                .filter(|&i| i < n && !lr.contains(i + 1))
                .collect(),
        )
    }

    pub fn bond_count(&self) -> usize {
        self.values
            .windows(2)
            .filter(|w| w[0].abs_diff(w[1]) == 1)
            .count()
    }

    /// Deletes the first ℓ(π) entries and standardizes the rest.
    pub fn strip_leading_maxima(&self) -> Permutation {
        Permutation::standardize(&self.values[self.leading_maxima_count()..])
    }

    pub fn delete_lr_maxima(&self) -> Permutation {
        let lr = self.lr_maxima();
        let rest: Vec<u16> = self
            .values
            .iter()
            .enumerate()
            .filter(|(i, _)| !lr.contains(i + 1))
            .map(|(_, &v)| v)
            .collect();
        Permutation::standardize(&rest)
    }

    /// Subsequence at the given 0-based positions, standardized.
    pub fn pattern_at(&self, positions: &[usize]) -> Permutation {
        let seq: Vec<u16> = positions.iter().map(|&i| self.values[i]).collect();
        Permutation::standardize(&seq)
    }

    /// Inserts a new maximum `n + 1` before 0-based slot `slot`.
    pub fn insert_max(&self, slot: usize) -> Permutation {
        let mut values = Vec::with_capacity(self.len() + 1);
        values.extend_from_slice(&self.values[..slot]);
        values.push(self.len() as u16 + 1);
        values.extend_from_slice(&self.values[slot..]);
        Permutation { values }
    }

    /// Removes the maximum entry.
    pub fn delete_max(&self) -> Permutation {
        let n = self.len() as u16;
        Permutation {
            values: self.values.iter().copied().filter(|&v| v != n).collect(),
        }
    }

    pub fn reverse(&self) -> Permutation {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u16 + 1;
        Permutation {
            values: self.values.iter().map(|&v| n - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0u16; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = i as u16 + 1;
        }
        Permutation { values }
    }

    /// Every permutation of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u16> = (1..=n as u16).collect();
        loop {
            out.push(Permutation {
                values: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// Parses the shared text format: a digit string for n ≤ 9, a comma-separated
/// list otherwise, and the empty string for ∅.
pub fn parse_permutation(text: &str) -> Result<Permutation, PermError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Permutation::empty());
    }
    let mut values = Vec::new();
    if text.contains(',') {
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit() || b == b'-') {
                return Err(PermError::Malformed(token.to_string()));
            }
            let v: i64 = token
                .parse()
                .map_err(|_| PermError::Malformed(token.to_string()))?;
            if v <= 0 {
                return Err(PermError::NonPositive(token.to_string()));
            }
            let v = u16::try_from(v).map_err(|_| PermError::TooLarge(token.to_string()))?;
            values.push(v);
        }
    } else {
        if !text.bytes().all(|b| b.is_ascii_digit()) {
            let bad: String = text
                .chars()
                .filter(|c| !c.is_ascii_digit())
                .take(1)
                .collect();
            return Err(PermError::Malformed(bad));
        }
        if text.len() > 9 {
            return Err(PermError::DigitFormTooLong(text.to_string()));
        }
        for b in text.bytes() {
            let v = (b - b'0') as u16;
            if v == 0 {
                return Err(PermError::NonPositive("0".to_string()));
            }
            values.push(v);
        }
    }
    Permutation::new(values)
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_permutation(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the tests and registries; panics on bad input.
pub fn perm(text: &str) -> Permutation {
    parse_permutation(text).unwrap_or_else(|e| panic!("bad permutation {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(perm("2413").values(), &[2, 4, 1, 3]);
        assert_eq!(perm("2,4,1,3"), perm("2413"));
        assert_eq!(perm(""), Permutation::empty());
        assert_eq!(perm("10,1,2,3,4,5,6,7,8,9").len(), 10);
    }

    #[test]
    fn parse_errors_name_the_token() {
        assert_eq!(parse_permutation("2414"), Err(PermError::Duplicate(4)));
        assert_eq!(parse_permutation("134"), Err(PermError::Missing(2)));
        assert_eq!(
            parse_permutation("1,0,2"),
            Err(PermError::NonPositive("0".into()))
        );
        assert_eq!(
            parse_permutation("1,-2"),
            Err(PermError::NonPositive("-2".into()))
        );
        assert_eq!(
            parse_permutation("1,,2"),
            Err(PermError::Malformed("".into()))
        );
        assert_eq!(
            parse_permutation("12a"),
            Err(PermError::Malformed("a".into()))
        );
        assert!(matches!(
            parse_permutation("1230"),
            Err(PermError::NonPositive(_))
        ));
        assert!(matches!(
            parse_permutation("1234567891"),
            Err(PermError::DigitFormTooLong(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        for s in ["", "1", "2413", "4,10,1,2,3,5,6,7,8,9"] {
            assert_eq!(perm(s).to_string(), s);
        }
    }

    #[test]
    fn lr_maxima_and_minima() {
        assert_eq!(perm("243156").lr_maxima().as_slice(), &[1, 2, 5, 6]);
        assert_eq!(perm("123").lr_maxima().as_slice(), &[1, 2, 3]);
        assert_eq!(perm("321").lr_maxima().as_slice(), &[1]);
        assert_eq!(perm("12").lr_minima().as_slice(), &[1]);
        assert_eq!(perm("321").lr_minima().as_slice(), &[1, 2, 3]);
        assert_eq!(perm("2413").lr_minima().as_slice(), &[1, 3]);
        assert!(Permutation::empty().lr_maxima().is_empty());
    }

    #[test]
    fn leading_maxima() {
        assert_eq!(perm("12345").leading_maxima_count(), 5);
        assert_eq!(perm("243156").leading_maxima_count(), 2);
        assert_eq!(perm("321").leading_maxima_count(), 1);
        assert_eq!(Permutation::empty().leading_maxima_count(), 0);
    }

    #[test]
    fn horizontal_gaps() {
        assert_eq!(perm("243156").horizontal_gaps().as_slice(), &[2]);
        assert!(perm("1234").horizontal_gaps().is_empty());
        assert_eq!(perm("2413").horizontal_gaps().as_slice(), &[2]);
    }

    #[test]
    fn bonds() {
        assert_eq!(perm("12").bond_count(), 1);
        assert_eq!(perm("2413").bond_count(), 0);
        assert_eq!(perm("546132").bond_count(), 2);
        assert_eq!(perm("1").bond_count(), 0);
        assert_eq!(Permutation::empty().bond_count(), 0);
    }

    #[test]
    fn strip_and_delete() {
        assert_eq!(perm("243156").strip_leading_maxima(), perm("2134"));
        assert_eq!(perm("123").strip_leading_maxima(), Permutation::empty());
        assert_eq!(perm("2413").strip_leading_maxima(), perm("12"));
        assert_eq!(perm("243156").delete_lr_maxima(), perm("21"));
        assert_eq!(perm("1234").delete_lr_maxima(), Permutation::empty());
        assert_eq!(perm("2413").delete_lr_maxima(), perm("12"));
    }

    #[test]
    fn all_of_length_is_lexicographic() {
        let all = Permutation::all_of_length(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all_of_length(0), vec![Permutation::empty()]);
    }
}

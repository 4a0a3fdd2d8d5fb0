//! Intervals, simplicity and the substitution decomposition.

use serde::{Deserialize, Serialize};

use super::ops::inflate;
use super::Permutation;

/// A contiguous block of positions whose values also form a contiguous range.
/// Positions and values are 1-based and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub value_lo: u16,
    pub value_hi: u16,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Simple skeleton plus one block per skeleton entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deflation {
    pub skeleton: Permutation,
    pub blocks: Vec<Permutation>,
}

impl Deflation {
    pub fn inflate(&self) -> Permutation {
        inflate(&self.skeleton, &self.blocks).expect("deflation blocks match skeleton")
    }
}

impl Permutation {
    /// Nontrivial intervals (length strictly between 1 and n), sorted by (lo, hi).
    pub fn intervals(&self) -> Vec<Interval> {
        let v = self.values();
        let n = v.len();
        let mut out = Vec::new();
        for i in 0..n {
            let (mut lo, mut hi) = (v[i], v[i]);
            for j in i + 1..n {
                lo = lo.min(v[j]);
                hi = hi.max(v[j]);
                let width = j - i + 1;
                if width == n {
                    break;
                }
                if (hi - lo) as usize == j - i {
                    out.push(Interval {
                        lo: i + 1,
                        hi: j + 1,
                        value_lo: lo,
                        value_hi: hi,
                    });
                }
            }
        }
        out
    }

    /// No nontrivial intervals. Lengths 0, 1 and 2 count as simple.
    pub fn is_simple(&self) -> bool {
        let v = self.values();
        let n = v.len();
        if n <= 2 {
            return true;
        }
        for i in 0..n {
            let (mut lo, mut hi) = (v[i], v[i]);
            for j in i + 1..n {
                if j - i + 1 == n {
                    break;
                }
                lo = lo.min(v[j]);
                hi = hi.max(v[j]);
                if (hi - lo) as usize == j - i {
                    return false;
                }
            }
        }
        true
    }

    /// Length of the shortest nonempty prefix occupying the bottom values, if
    /// shorter than the permutation.
    fn sum_split(&self) -> Option<usize> {
        let mut hi = 0;
        for (i, &x) in self
            .values()
            .iter()
            .enumerate()
            .take(self.len().saturating_sub(1))
        {
            hi = hi.max(x as usize);
            if hi == i + 1 {
                return Some(i + 1);
            }
        }
        None
    }

    fn skew_split(&self) -> Option<usize> {
        let n = self.len();
        let mut lo = usize::MAX;
        for (i, &x) in self.values().iter().enumerate().take(n.saturating_sub(1)) {
            lo = lo.min(x as usize);
            if lo == n - i {
                return Some(i + 1);
            }
        }
        None
    }

    pub fn is_sum_decomposable(&self) -> bool {
        self.sum_split().is_some()
    }

    pub fn is_skew_decomposable(&self) -> bool {
        self.skew_split().is_some()
    }

    /// Substitution decomposition. For a sum the first block is the first
    /// sum-indecomposable component (skew likewise); otherwise the blocks are
    /// the maximal proper intervals.
    pub fn deflate(&self) -> Deflation {
        let n = self.len();
        let v = self.values();
        if n <= 1 {
            return Deflation {
                skeleton: self.clone(),
                blocks: if n == 1 {
                    vec![self.clone()]
                } else {
                    Vec::new()
                },
            };
        }
        if let Some(k) = self.sum_split() {
            return Deflation {
                skeleton: Permutation::identity(2),
                blocks: vec![
                    Permutation::standardize(&v[..k]),
                    Permutation::standardize(&v[k..]),
                ],
            };
        }
        if let Some(k) = self.skew_split() {
            return Deflation {
                skeleton: Permutation::decreasing(2),
                blocks: vec![
                    Permutation::standardize(&v[..k]),
                    Permutation::standardize(&v[k..]),
                ],
            };
        }
        // maximal proper intervals partition the positions; take the longest
        // proper interval starting at each block boundary
        let mut blocks = Vec::new();
        let mut reps = Vec::new();
        let mut i = 0;
        while i < n {
            let (mut lo, mut hi) = (v[i], v[i]);
            let mut end = i;
            for j in i + 1..n {
                if j - i + 1 == n {
                    break;
                }
                lo = lo.min(v[j]);
                hi = hi.max(v[j]);
                if (hi - lo) as usize == j - i {
                    end = j;
                }
            }
            blocks.push(Permutation::standardize(&v[i..=end]));
            reps.push(v[i]);
            i = end + 1;
        }
        Deflation {
            skeleton: Permutation::standardize(&reps),
            blocks,
        }
    }
}

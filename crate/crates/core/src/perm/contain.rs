//! Exact pattern containment by depth-first partial-occurrence search.
//!
//! Pattern entries are matched left to right. When entry `k` is placed, its
//! host value must lie strictly between the host values of the two earlier
//! pattern entries that bracket `τ_k` in value, which is all that is needed to
//! keep the partial occurrence order-isomorphic.

use super::Permutation;

/// A pattern preprocessed for repeated containment queries.
#[derive(Clone, Debug)]
pub struct PatternPlan {
    pattern: Permutation,
    /// For entry k, the earlier entry with the largest value below `τ_k`.
    lower: Vec<Option<usize>>,
    /// For entry k, the earlier entry with the smallest value above `τ_k`.
    upper: Vec<Option<usize>>,
    /// 0-based position of the maximum.
    max_position: usize,
}

impl PatternPlan {
    pub fn new(pattern: &Permutation) -> Self {
        let v = pattern.values();
        let mut lower = Vec::with_capacity(v.len());
        let mut upper = Vec::with_capacity(v.len());
        for k in 0..v.len() {
            let below = (0..k).filter(|&j| v[j] < v[k]).max_by_key(|&j| v[j]);
            let above = (0..k).filter(|&j| v[j] > v[k]).min_by_key(|&j| v[j]);
            lower.push(below);
            upper.push(above);
        }
        let max_position = v.iter().position(|&x| x as usize == v.len()).unwrap_or(0);
        PatternPlan {
            pattern: pattern.clone(),
            lower,
            upper,
            max_position,
        }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Whether `host` contains the pattern anywhere.
    pub fn occurs_in(&self, host: &Permutation) -> bool {
        if self.len() > host.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let mut matched = vec![0usize; self.len()];
        self.search(host.values(), 0, 0, None, &mut matched)
    }

    /// Whether `host` has an occurrence in which the pattern's maximum sits at
    /// 0-based host position `host_position`.
    ///
    /// When `host` arose by inserting its maximum into an avoider of this
    /// pattern, every new occurrence uses the inserted maximum, and that entry
    /// can only play the pattern's maximum.
    pub fn occurs_through_max(&self, host: &Permutation, host_position: usize) -> bool {
        if self.len() > host.len() || self.is_empty() {
            return self.is_empty();
        }
        let mut matched = vec![0usize; self.len()];
        self.search(
            host.values(),
            0,
            0,
            Some((self.max_position, host_position)),
            &mut matched,
        )
    }

    fn search(
        &self,
        host: &[u16],
        k: usize,
        start: usize,
        fixed: Option<(usize, usize)>,
        matched: &mut [usize],
    ) -> bool {
        let m = self.len();
        if k == m {
            return true;
        }
        let n = host.len();
        // leave room for the remaining m - k - 1 entries
        let mut last = n - (m - k);
        let mut first = start;
        if let Some((pk, hp)) = fixed {
            if k == pk {
                if hp < start || hp > last {
                    return false;
                }
                first = hp;
                last = hp;
            } else if k < pk {
                // entries before the fixed one must fit strictly left of it
                let bound = hp.checked_sub(pk - k);
                match bound {
                    Some(b) => last = last.min(b),
                    None => return false,
                }
            }
        }
        if first > last {
            return false;
        }
        let lo = self.lower[k].map(|j| host[matched[j]]).unwrap_or(0);
        let hi = self.upper[k].map(|j| host[matched[j]]).unwrap_or(u16::MAX);
        if hi <= lo + 1 && hi != u16::MAX {
            return false;
        }
        for p in first..=last {
            let v = host[p];
            if v > lo && v < hi {
                matched[k] = p;
                if self.search(host, k + 1, p + 1, fixed, matched) {
                    return true;
                }
            }
        }
        false
    }
}

/// True iff some subsequence of `host` is order-isomorphic to `pattern`.
pub fn contains(host: &Permutation, pattern: &Permutation) -> bool {
    PatternPlan::new(pattern).occurs_in(host)
}

/// Occurrence test restricted to occurrences through the host entry at
/// 0-based `host_position`, which must be the host's maximum.
pub fn contains_through(host: &Permutation, pattern: &Permutation, host_position: usize) -> bool {
    debug_assert_eq!(host.values()[host_position] as usize, host.len());
    PatternPlan::new(pattern).occurs_through_max(host, host_position)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    /// Reference: try every index subset.
    fn brute(host: &Permutation, pattern: &Permutation) -> bool {
        let n = host.len();
        let k = pattern.len();
        if k > n {
            return false;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if host.pattern_at(&idx) == *pattern {
                return true;
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                return false;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    #[test]
    fn worked_examples() {
        assert!(contains(&perm("315462"), &perm("3142")));
        assert!(!contains(&perm("123456"), &perm("2143")));
        assert!(!contains(&perm("243156"), &perm("2143")));
        assert!(contains(&perm("263514"), &perm("263514")));
        assert!(contains(&perm("4321"), &Permutation::empty()));
        assert!(contains(&Permutation::empty(), &Permutation::empty()));
        assert!(!contains(&Permutation::empty(), &perm("1")));
    }

    #[test]
    fn agrees_with_subset_scan_exhaustively() {
        let patterns: Vec<Permutation> = (1..=4).flat_map(Permutation::all_of_length).collect();
        for n in 0..=6 {
            for host in Permutation::all_of_length(n) {
                for p in &patterns {
                    assert_eq!(contains(&host, p), brute(&host, p), "{host:?} {p:?}");
                }
            }
        }
    }

    #[test]
    fn through_max_finds_exactly_new_occurrences() {
        let patterns = [perm("2143"), perm("3142"), perm("132"), perm("4132")];
        for n in 0..=6 {
            for parent in Permutation::all_of_length(n) {
                for p in &patterns {
                    if contains(&parent, p) {
                        continue;
                    }
                    for slot in 0..=n {
                        let child = parent.insert_max(slot);
                        assert_eq!(contains_through(&child, p, slot), contains(&child, p));
                    }
                }
            }
        }
    }
}

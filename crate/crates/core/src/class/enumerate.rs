//! Generation tree over insertion of a new maximum.
//!
//! Every member of Av_n arises exactly once, from the member of Av_{n-1}
//! obtained by deleting its maximum. A child of an avoiding parent can only
//! contain a basis pattern through the inserted maximum, so only those
//! occurrences are searched.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::{ClassError, PatternBasis};
use crate::perm::{PatternPlan, Permutation};

pub const DEFAULT_CAPACITY: usize = 10_000_000;

/// Members of a class by length, each level sorted lexicographically.
#[derive(Clone, Debug)]
pub struct Levels {
    basis: PatternBasis,
    levels: Vec<Vec<Permutation>>,
}

impl Levels {
    pub fn basis(&self) -> &PatternBasis {
        &self.basis
    }

    pub fn max_n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[Permutation] {
        &self.levels[n]
    }

    pub fn counts(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }

    /// All members of length at most `max_n`, shortest first.
    pub fn iter_upto(&self, max_n: usize) -> impl Iterator<Item = &Permutation> {
        self.levels[..=max_n.min(self.max_n())].iter().flatten()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.len() <= self.max_n() && self.levels[p.len()].binary_search(p).is_ok()
    }
}

#[derive(Clone)]
pub struct Enumerator {
    basis: PatternBasis,
    plans: Vec<PatternPlan>,
    capacity: usize,
    pool: Option<Arc<rayon::ThreadPool>>,
    sequential: bool,
}

impl Enumerator {
    pub fn new(basis: &PatternBasis) -> Self {
        Enumerator {
            basis: basis.clone(),
            plans: basis.patterns().iter().map(PatternPlan::new).collect(),
            capacity: DEFAULT_CAPACITY,
            pool: None,
            sequential: false,
        }
    }

    pub fn with_capacity(mut self, capacity: usize) -> Self {
        self.capacity = capacity;
        self
    }

    /// Worker count: 0 uses the global pool, 1 runs on the calling thread.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.sequential = threads == 1;
        self.pool = if threads > 1 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .ok()
                .map(Arc::new)
        } else {
            None
        };
        self
    }

    pub fn basis(&self) -> &PatternBasis {
        &self.basis
    }

    fn children(&self, parent: &Permutation, out: &mut Vec<Permutation>) {
        for slot in 0..=parent.len() {
            let child = parent.insert_max(slot);
            if self
                .plans
                .iter()
                .all(|p| !p.occurs_through_max(&child, slot))
            {
                out.push(child);
            }
        }
    }

    /// Av_n from Av_{n-1}.
    pub fn next_level(
        &self,
        prev: &[Permutation],
        n: usize,
    ) -> Result<Vec<Permutation>, ClassError> {
        if n == 0 {
            return Ok(vec![Permutation::empty()]);
        }
        let cap = self.capacity;
        if self.sequential {
            let mut out = Vec::new();
            for p in prev {
                self.children(p, &mut out);
                if out.len() > cap {
                    return Err(ClassError::Capacity { n, cap });
                }
            }
            out.sort_unstable();
            return Ok(out);
        }
        let produced = AtomicUsize::new(0);
        let overflow = AtomicBool::new(false);
        let run = || {
            let mut out: Vec<Permutation> = prev
                .par_iter()
                .flat_map_iter(|p| {
                    let mut kids = Vec::new();
                    if !overflow.load(Ordering::Relaxed) {
                        self.children(p, &mut kids);
                        if produced.fetch_add(kids.len(), Ordering::Relaxed) + kids.len() > cap {
                            overflow.store(true, Ordering::Relaxed);
                        }
                    }
                    kids
                })
                .collect();
            out.par_sort_unstable();
            out
        };
        let out = match &self.pool {
            Some(pool) => pool.install(run),
            None => run(),
        };
        if overflow.load(Ordering::Relaxed) {
            return Err(ClassError::Capacity { n, cap });
        }
        Ok(out)
    }

    pub fn levels(&self, max_n: usize) -> Result<Levels, ClassError> {
        let mut levels = Levels {
            basis: self.basis.clone(),
            levels: vec![vec![Permutation::empty()]],
        };
        self.extend(&mut levels, max_n)?;
        Ok(levels)
    }

    pub fn extend(&self, levels: &mut Levels, max_n: usize) -> Result<(), ClassError> {
        debug_assert_eq!(levels.basis, self.basis);
        while levels.max_n() < max_n {
            let n = levels.max_n() + 1;
            let next = self.next_level(&levels.levels[n - 1], n)?;
            levels.levels.push(next);
        }
        Ok(())
    }

    /// Counts only; keeps two levels in memory at a time.
    pub fn counts(&self, max_n: usize) -> Result<Vec<u64>, ClassError> {
        let mut level = vec![Permutation::empty()];
        let mut counts = vec![1];
        for n in 1..=max_n {
            level = self.next_level(&level, n)?;
            counts.push(level.len() as u64);
        }
        Ok(counts)
    }
}

/// Av_n(basis), sorted.
pub fn enumerate_class(basis: &PatternBasis, n: usize) -> Result<Vec<Permutation>, ClassError> {
    let e = Enumerator::new(basis);
    let mut level = vec![Permutation::empty()];
    for k in 1..=n {
        level = e.next_level(&level, k)?;
    }
    Ok(level)
}

/// (|Av_0|, …, |Av_maxN|).
pub fn count_class(basis: &PatternBasis, max_n: usize) -> Result<Vec<u64>, ClassError> {
    Enumerator::new(basis).counts(max_n)
}

/// Memo of enumerated classes, shared by the series and verification layers.
pub struct ClassLab {
    capacity: usize,
    threads: usize,
    store: Mutex<HashMap<PatternBasis, Arc<Levels>>>,
}

impl Default for ClassLab {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY, 0)
    }
}

impl ClassLab {
    pub fn new(capacity: usize, threads: usize) -> Self {
        ClassLab {
            capacity,
            threads,
            store: Mutex::new(HashMap::new()),
        }
    }

    /// Process-wide instance with default settings.
    pub fn shared() -> &'static ClassLab {
        static LAB: OnceLock<ClassLab> = OnceLock::new();
        LAB.get_or_init(ClassLab::default)
    }

    pub fn levels(&self, basis: &PatternBasis, max_n: usize) -> Result<Arc<Levels>, ClassError> {
        let existing = self.store.lock().unwrap().get(basis).cloned();
        let mut levels = match existing {
            Some(l) if l.max_n() >= max_n => return Ok(l),
            Some(l) => (*l).clone(),
            None => Levels {
                basis: basis.clone(),
                levels: vec![vec![Permutation::empty()]],
            },
        };
        let e = Enumerator::new(basis)
            .with_capacity(self.capacity)
            .with_threads(self.threads);
        e.extend(&mut levels, max_n)?;
        let levels = Arc::new(levels);
        let mut store = self.store.lock().unwrap();
        let slot = store.entry(basis.clone()).or_insert_with(|| levels.clone());
        if slot.max_n() < levels.max_n() {
            *slot = levels.clone();
        }
        Ok(levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn basis(s: &str) -> PatternBasis {
        PatternBasis::parse(s).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_class(&basis("2143,3142"), 3).unwrap().len(), 6);
        assert_eq!(
            enumerate_class(&basis("2143,3142"), 1).unwrap(),
            vec![perm("1")]
        );
        assert_eq!(
            enumerate_class(&basis("2143,3142,254613"), 4)
                .unwrap()
                .len(),
            22
        );
        assert_eq!(count_class(&basis("12"), 4).unwrap(), vec![1, 1, 1, 1, 1]);
        assert_eq!(
            count_class(&basis("2143,3142,524361"), 7).unwrap(),
            vec![1, 1, 2, 6, 22, 90, 394, 1806]
        );
        let near = count_class(&basis("2143,3142"), 7).unwrap();
        assert_eq!(&near[6..], &[395, 1823]);
        assert_eq!(
            count_class(&basis("132"), 8).unwrap(),
            vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]
        );
    }

    #[test]
    fn matches_filtered_symmetric_group() {
        let bases = [
            "2143,3142",
            "2143,3142,4132",
            "132",
            "2143,3142,254613",
            "321",
        ];
        for b in bases {
            let b = basis(b);
            let levels = Enumerator::new(&b).levels(7).unwrap();
            for n in 0..=7 {
                let expected: Vec<Permutation> = Permutation::all_of_length(n)
                    .into_iter()
                    .filter(|p| b.admits(p))
                    .collect();
                assert_eq!(levels.level(n), expected.as_slice(), "{b:?} n={n}");
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let b = basis("2143,3142,546132");
        let seq = Enumerator::new(&b).with_threads(1).levels(8).unwrap();
        let par = Enumerator::new(&b).with_threads(4).levels(8).unwrap();
        for n in 0..=8 {
            assert_eq!(seq.level(n), par.level(n));
        }
    }

    #[test]
    fn capacity_is_reported() {
        let e = Enumerator::new(&basis("2143,3142")).with_capacity(100);
        assert_eq!(e.counts(6), Err(ClassError::Capacity { n: 6, cap: 100 }));
        let e = Enumerator::new(&basis("2143,3142"))
            .with_capacity(100)
            .with_threads(1);
        assert_eq!(e.counts(6), Err(ClassError::Capacity { n: 6, cap: 100 }));
    }

    #[test]
    fn lab_reuses_and_extends() {
        let lab = ClassLab::default();
        let b = basis("2143,3142,4132");
        let small = lab.levels(&b, 5).unwrap();
        let big = lab.levels(&b, 7).unwrap();
        assert_eq!(small.level(5), big.level(5));
        assert!(Arc::ptr_eq(&big, &lab.levels(&b, 6).unwrap()));
    }
}

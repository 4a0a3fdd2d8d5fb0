//! Simple members of a class and the constructed family T.

use super::{enumerate_class, ClassError, PatternBasis};
use crate::perm::{direct_sum, perm, skew_sum, Permutation};

/// Simple members of Av_n(basis).
pub fn enumerate_simples(basis: &PatternBasis, n: usize) -> Result<Vec<Permutation>, ClassError> {
    Ok(enumerate_class(basis, n)?
        .into_iter()
        .filter(Permutation::is_simple)
        .collect())
}

/// Members of T of length n, sorted.
///
/// Start from α = m ⊖ (β ⊕ 1) with β ∈ Av_{m-2}(132), so α₁ = m and
/// α_m = m - 1, and insert new leading maxima just below some of the rows
/// 2..m-1: exactly one below row r whenever rows r-1 and r are adjacent in α,
/// at most one otherwise.
pub fn generate_t(n: usize) -> Result<Vec<Permutation>, ClassError> {
    if n < 4 {
        return Err(ClassError::Precondition(format!(
            "T has no members of length {n} < 4"
        )));
    }
    let av132 = PatternBasis::new([perm("132")])?;
    let mut out = Vec::new();
    // m + (number of insertions) = n and at most m - 2 insertions
    for m in (n + 3) / 2..=n {
        let extra = n - m;
        for beta in enumerate_class(&av132, m - 2)? {
            let alpha = skew_sum(&perm("1"), &direct_sum(&beta, &perm("1")));
            let pos = position_of_values(&alpha);
            let forced: Vec<usize> = (2..m)
                .filter(|&r| pos[r].abs_diff(pos[r - 1]) == 1)
                .collect();
            let optional: Vec<usize> = (2..m)
                .filter(|&r| pos[r].abs_diff(pos[r - 1]) != 1)
                .collect();
            if forced.len() > extra || forced.len() + optional.len() < extra {
                continue;
            }
            for chosen in subsets(&optional, extra - forced.len()) {
                let mut rows: Vec<usize> = forced.iter().copied().chain(chosen).collect();
                rows.sort_unstable();
                out.push(insert_below_rows(&alpha, &rows));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// pos[v] = 0-based position of value v.
fn position_of_values(p: &Permutation) -> Vec<usize> {
    let mut pos = vec![0; p.len() + 1];
    for (i, &v) in p.values().iter().enumerate() {
        pos[v as usize] = i;
    }
    pos
}

/// Prepends increasing entries valued just below each row in `rows`.
fn insert_below_rows(alpha: &Permutation, rows: &[usize]) -> Permutation {
    let seq: Vec<usize> = rows
        .iter()
        .map(|&r| 2 * r - 1)
        .chain(alpha.values().iter().map(|&v| 2 * v as usize))
        .collect();
    Permutation::standardize(&seq)
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(s: &str) -> PatternBasis {
        PatternBasis::parse(s).unwrap()
    }

    #[test]
    fn smallest_cases() {
        assert_eq!(
            enumerate_simples(&basis("2143,3142,4132"), 4).unwrap(),
            vec![perm("2413")]
        );
        assert!(enumerate_simples(&basis("2143,3142"), 3)
            .unwrap()
            .is_empty());
        assert!(enumerate_simples(&basis("12"), 3).unwrap().is_empty());
        assert_eq!(generate_t(4).unwrap(), vec![perm("2413")]);
        assert!(matches!(generate_t(3), Err(ClassError::Precondition(_))));
    }

    #[test]
    fn t_is_simple_and_in_the_class() {
        let b = basis("2143,3142,4132");
        for n in 4..=9 {
            for p in generate_t(n).unwrap() {
                assert!(p.is_simple(), "{p:?}");
                assert!(b.admits(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn t_matches_simples() {
        let b = basis("2143,3142,4132");
        for n in 4..=8 {
            assert_eq!(
                generate_t(n).unwrap(),
                enumerate_simples(&b, n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn worked_twelve() {
        let p = Permutation::new(vec![2, 4, 7, 9, 12, 6, 8, 5, 10, 1, 3, 11]).unwrap();
        assert_eq!(Permutation::standardize(&p.values()[4..]), perm("84536127"));
        assert!(generate_t(12).unwrap().binary_search(&p).is_ok());
    }
}

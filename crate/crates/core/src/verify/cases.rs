//! Generators for the case decompositions of C(254613), C(524361) and
//! C(546132), and the ℓ-preserving bijection between the sets 𝒜 and ℬ.
//!
//! Each generator builds its class length by length from its own earlier
//! output, so a reconstruction check is a once-each comparison against the
//! enumerated class.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Collector, VerificationReport, VerifyError};
use crate::class::{ClassLab, Levels, PatternBasis};
use crate::perm::{direct_sum, extraction, inflate, perm, skew_sum, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseId {
    NoGap,
    OneGap,
    MultiGap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseTag {
    pub case: CaseId,
    /// The construction that produced the permutation.
    pub rule: &'static str,
}

const fn tag(case: CaseId, rule: &'static str) -> CaseTag {
    CaseTag { case, rule }
}

/// Generated permutations by length, with the case that produced each.
pub type Generated = Vec<Vec<(Permutation, CaseTag)>>;

fn ident(n: usize) -> Permutation {
    Permutation::identity(n)
}

fn one() -> Permutation {
    Permutation::identity(1)
}

fn contains_132(p: &Permutation) -> bool {
    p.contains(&perm("132"))
}

fn perms(level: &[(Permutation, CaseTag)]) -> impl Iterator<Item = &Permutation> {
    level.iter().map(|(p, _)| p)
}

/// Case 1: identities. Case 2: (1 ⊖ᵢ β) ⊕ 1…m. Case 3: a new horizontal gap
/// appended to some π′ with a gap, or a new block inserted into the rightmost
/// gap of some π′ with at least two gaps.
pub fn case_partition_254613(max_n: usize) -> Result<Generated, VerifyError> {
    let mut by_n: Generated = Vec::new();
    for n in 0..=max_n {
        let mut out = vec![(ident(n), tag(CaseId::NoGap, "identity"))];
        for bl in 1..n {
            let m = n - 1 - bl;
            for b in perms(&by_n[bl]) {
                for i in 0..=b.leading_maxima_count().min(bl - 1) {
                    let p = direct_sum(&extraction(&one(), b, i)?, &ident(m));
                    out.push((p, tag(CaseId::OneGap, "extraction")));
                }
            }
        }
        for pl in 1..n {
            for p in perms(&by_n[pl]) {
                let gaps = p.horizontal_gaps().len();
                if gaps == 0 {
                    continue;
                }
                let p1 = direct_sum(p, &one());
                for bl in 1..n - pl {
                    for b in perms(&by_n[bl]) {
                        let core = skew_sum(&p1, b);
                        for k1 in 0..n - pl - bl {
                            let m = n - pl - bl - k1 - 1;
                            let q = direct_sum(&direct_sum(&ident(k1), &core), &ident(m));
                            out.push((q, tag(CaseId::MultiGap, "gap-insertion")));
                        }
                    }
                }
                if gaps >= 2 {
                    let lr = p.lr_maxima();
                    let last = (1..=pl)
                        .filter(|&i| !lr.contains(i))
                        .max()
                        .expect("a gap has content");
                    for bl in 1..n - pl {
                        let k = n - pl - bl - 1;
                        for b in perms(&by_n[bl]) {
                            out.push((
                                block_insertion(p, last, b, k),
                                tag(CaseId::MultiGap, "block-insertion"),
                            ));
                        }
                    }
                }
            }
        }
        by_n.push(out);
    }
    Ok(by_n)
}

/// 1…k, then a new maximum-below-π′ separator, then π′ with `block` placed
/// after its last non-LR-maximum entry (1-based `last`); the block's values
/// sit between the k prefix entries and the separator.
fn block_insertion(p: &Permutation, last: usize, block: &Permutation, k: usize) -> Permutation {
    let bl = block.len() as u16;
    let k16 = k as u16;
    let shift = bl + k16 + 1;
    let v = p.values();
    let mut values: Vec<u16> = (1..=k16).collect();
    values.push(k16 + bl + 1);
    values.extend(v[..last].iter().map(|&x| x + shift));
    values.extend(block.values().iter().map(|&x| x + k16));
    values.extend(v[last..].iter().map(|&x| x + shift));
    Permutation::standardize(&values)
}

/// One-gap outputs shared by the 524361 and 546132 decompositions:
/// (1 ⊖ᵢ β) ⊕ 1…m where the part of β after its first i entries contains 132.
fn one_gap(
    by_n: &Generated,
    n: usize,
    out: &mut Vec<(Permutation, CaseTag)>,
) -> Result<(), VerifyError> {
    for bl in 1..n {
        let m = n - 1 - bl;
        for b in perms(&by_n[bl]) {
            for i in 0..=b.leading_maxima_count() {
                let suffix = Permutation::standardize(&b.values()[i..]);
                if !suffix.is_empty() && contains_132(&suffix) {
                    let p = direct_sum(&extraction(&one(), b, i)?, &ident(m));
                    out.push((p, tag(CaseId::OneGap, "extraction")));
                }
            }
        }
    }
    Ok(())
}

fn c4132(max_n: usize) -> Result<std::sync::Arc<Levels>, VerifyError> {
    let b = PatternBasis::c(&perm("4132"))?;
    Ok(ClassLab::shared().levels(&b, max_n)?)
}

/// Case 1: C(4132). Case 2: (α′ ⊖ᵢ β) ⊕ 1…m with α′ = 1 or α′ = α ⊕ 1 for
/// nonempty α ∈ C(4132) with α₁ ≠ 1, and β's suffix after i entries
/// containing 132.
pub fn decomp_524361(max_n: usize) -> Result<Generated, VerifyError> {
    let c4 = c4132(max_n)?;
    let mut by_n: Generated = Vec::new();
    for n in 0..=max_n {
        let mut out: Vec<_> = c4
            .level(n)
            .iter()
            .map(|p| (p.clone(), tag(CaseId::NoGap, "C(4132)")))
            .collect();
        one_gap(&by_n, n, &mut out)?;
        for al in 1..n {
            for a in c4.level(al).iter().filter(|a| a.at(1) != 1) {
                let a1 = direct_sum(a, &one());
                for bl in 1..n - al {
                    let m = n - al - 1 - bl;
                    for b in perms(&by_n[bl]) {
                        for i in 0..=b.leading_maxima_count() {
                            let suffix = Permutation::standardize(&b.values()[i..]);
                            if !suffix.is_empty() && contains_132(&suffix) {
                                let p = direct_sum(&extraction(&a1, b, i)?, &ident(m));
                                out.push((p, tag(CaseId::MultiGap, "extraction")));
                            }
                        }
                    }
                }
            }
        }
        by_n.push(out);
    }
    Ok(by_n)
}

/// σ ∈ C(4132), σ nonempty, with σ_ℓ − 1 ≠ σ_{ℓ−1} (σ_0 read as 0).
pub fn in_set_a(sigma: &Permutation) -> bool {
    if sigma.is_empty() {
        return false;
    }
    let ell = sigma.leading_maxima_count();
    let prev = if ell >= 2 { sigma.at(ell - 1) } else { 0 };
    sigma.at(ell) - 1 != prev
}

/// Case 1: C(4132). One-gap form as for 524361. Multi-gap form: β ∈ 𝒜 with
/// β_ℓ(β) inflated by α ⊕ 1, α a one-gap output.
pub fn decomp_546132(max_n: usize) -> Result<Generated, VerifyError> {
    let c4 = c4132(max_n)?;
    let mut by_n: Generated = Vec::new();
    let mut one_gaps: Vec<Vec<Permutation>> = Vec::new();
    for n in 0..=max_n {
        let mut out: Vec<_> = c4
            .level(n)
            .iter()
            .map(|p| (p.clone(), tag(CaseId::NoGap, "C(4132)")))
            .collect();
        let mut ones = Vec::new();
        one_gap(&by_n, n, &mut ones)?;
        one_gaps.push(ones.iter().map(|(p, _)| p.clone()).collect());
        out.extend(ones);
        for al in 2..n {
            let bl = n - al;
            for a in &one_gaps[al] {
                let a1 = direct_sum(a, &one());
                for b in c4.level(bl).iter().filter(|b| in_set_a(b)) {
                    let mut blocks = vec![one(); bl];
                    blocks[b.leading_maxima_count() - 1] = a1.clone();
                    out.push((inflate(b, &blocks)?, tag(CaseId::MultiGap, "inflation")));
                }
            }
        }
        by_n.push(out);
    }
    Ok(by_n)
}

/// 𝒜 → ℬ: the increasing prefix 1…i moves to sit immediately left of σ_ℓ,
/// taking the i values immediately below σ_ℓ.
pub fn a_to_b(sigma: &Permutation) -> Permutation {
    let v = sigma.values();
    let i = v
        .iter()
        .enumerate()
        .take_while(|(j, &x)| x as usize == j + 1)
        .count();
    let ell = sigma.leading_maxima_count();
    if i == 0 || i >= ell {
        return sigma.clone();
    }
    let top = v[ell - 1];
    // keys order the moved entries between top − 1 and top
    let mut keys: Vec<(u16, usize)> = Vec::with_capacity(v.len());
    keys.extend(v[i..ell - 1].iter().map(|&x| (x, 0)));
    keys.extend((1..=i).map(|k| (top - 1, k)));
    keys.extend(v[ell - 1..].iter().map(|&x| (x, 0)));
    Permutation::standardize(&keys)
}

/// Compares a generator's output with the enumerated class, once each.
fn compare(c: &mut Collector, generated: &Generated, class: &Levels) {
    for (n, level) in generated.iter().enumerate() {
        let mut seen: HashMap<&Permutation, Vec<CaseTag>> = HashMap::new();
        for (p, t) in level {
            seen.entry(p).or_default().push(*t);
        }
        let sorted: BTreeMap<_, _> = seen.iter().collect();
        for (p, tags) in sorted {
            if tags.len() > 1 {
                let rules: Vec<&str> = tags.iter().map(|t| t.rule).collect();
                c.fail(
                    p,
                    format!("generated {} times ({})", tags.len(), rules.join(", ")),
                );
            }
            if !class.contains(p) {
                c.fail(
                    p,
                    format!("generated by {} but not in the class", tags[0].rule),
                );
            }
        }
        for p in class.level(n) {
            if !seen.contains_key(p) {
                c.fail(p, "never generated");
            }
        }
    }
}

fn reconstruction(
    id: &str,
    tau: &str,
    max_n: usize,
    generate: fn(usize) -> Result<Generated, VerifyError>,
) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new(id, max_n);
    let class = ClassLab::shared().levels(&PatternBasis::c(&perm(tau))?, max_n)?;
    compare(&mut c, &generate(max_n)?, &class);
    Ok(c.finish())
}

pub fn check_case_partition_254613(max_n: usize) -> Result<VerificationReport, VerifyError> {
    reconstruction(
        "case-partition-254613",
        "254613",
        max_n,
        case_partition_254613,
    )
}

pub fn check_decomp_524361(max_n: usize) -> Result<VerificationReport, VerifyError> {
    reconstruction("decomp-524361", "524361", max_n, decomp_524361)
}

pub fn check_decomp_546132(max_n: usize) -> Result<VerificationReport, VerifyError> {
    reconstruction("decomp-546132", "546132", max_n, decomp_546132)
}

/// The map 𝒜 → ℬ = {σ ∈ C(4132) : σ ≠ ∅, σ₁ ≠ 1} preserves length and ℓ and
/// is a bijection at every length.
pub fn check_bijection_a_b(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("bijection-A-B", max_n);
    let c4 = c4132(max_n)?;
    for n in 0..=max_n {
        let b_set: HashSet<&Permutation> = c4
            .level(n)
            .iter()
            .filter(|s| !s.is_empty() && s.at(1) != 1)
            .collect();
        let mut hit: HashMap<Permutation, Permutation> = HashMap::new();
        for s in c4.level(n).iter().filter(|s| in_set_a(s)) {
            let image = a_to_b(s);
            if !b_set.contains(&image) {
                c.fail(s, format!("image {image} lies outside B"));
            }
            if image.leading_maxima_count() != s.leading_maxima_count() {
                c.fail(
                    s,
                    format!("image {image} changes the number of leading maxima"),
                );
            }
            if let Some(prev) = hit.insert(image.clone(), s.clone()) {
                c.fail(s, format!("image {image} also hit by {prev}"));
            }
        }
        let mut missed: Vec<&&Permutation> =
            b_set.iter().filter(|s| !hit.contains_key(**s)).collect();
        missed.sort();
        for s in missed {
            c.fail(s, "member of B not in the image");
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tags_of(g: &Generated, p: &Permutation) -> Vec<CaseTag> {
        g[p.len()]
            .iter()
            .filter(|(q, _)| q == p)
            .map(|(_, t)| *t)
            .collect()
    }

    #[test]
    fn case_examples() {
        let g = case_partition_254613(6).unwrap();
        assert_eq!(
            tags_of(&g, &perm("243156")),
            vec![tag(CaseId::OneGap, "extraction")]
        );
        assert_eq!(
            tags_of(&g, &perm("1234")),
            vec![tag(CaseId::NoGap, "identity")]
        );
        let counts: Vec<usize> = g.iter().map(Vec::len).collect();
        assert_eq!(counts, [1, 1, 2, 6, 22, 90, 394]);
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(a_to_b(&perm("1324")), perm("2314"));
        assert_eq!(a_to_b(&perm("21")), perm("21"));
        assert!(in_set_a(&perm("1324")));
        assert!(!in_set_a(&perm("1")));
        assert!(!in_set_a(&perm("12")));
    }

    #[test]
    fn case_one_of_524361_lies_in_c4132() {
        let g = decomp_524361(6).unwrap();
        let c4 = c4132(6).unwrap();
        for (p, t) in g.iter().flatten() {
            if t.case == CaseId::NoGap {
                assert!(c4.contains(p));
            }
        }
    }

    #[test]
    fn multi_gap_546132_contains_132_in_its_block() {
        let g = decomp_546132(7).unwrap();
        for (p, t) in g
            .iter()
            .flatten()
            .filter(|(_, t)| t.case == CaseId::MultiGap)
        {
            assert_eq!(t.rule, "inflation");
            assert!(contains_132(p), "{p}");
        }
    }

    #[test]
    fn reconstructions_pass_small() {
        for r in [
            check_case_partition_254613(7),
            check_decomp_524361(7),
            check_decomp_546132(7),
            check_bijection_a_b(7),
        ] {
            let r = r.unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

//! Lemma-level checks: leading maxima, the staircase shape, the 4132
//! characterization, simples, and the substitution decomposition.

use std::collections::BTreeSet;

use super::{Collector, VerificationReport, VerifyError};
use crate::class::{generate_t, ClassLab, PatternBasis};
use crate::perm::{inflate, perm, Deflation, Permutation};

fn basis(text: &str) -> PatternBasis {
    PatternBasis::parse(text).expect("registered basis")
}

fn c_of(tau: &str) -> PatternBasis {
    PatternBasis::c(&perm(tau)).expect("registered basis")
}

/// Over Av(2143): the LR-maxima at positions ≥ ℓ carry exactly the values
/// π_ℓ..n, and ℓ is a horizontal gap unless π is increasing.
pub fn check_lemma2(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("lemma2", max_n);
    let levels = ClassLab::shared().levels(&basis("2143"), max_n)?;
    for p in levels.iter_upto(max_n).filter(|p| !p.is_empty()) {
        let ell = p.leading_maxima_count();
        let top: Vec<u16> = p
            .lr_maxima()
            .iter()
            .filter(|&i| i >= ell)
            .map(|i| p.at(i))
            .collect();
        let expected: Vec<u16> = (p.at(ell)..=p.len() as u16).collect();
        if top != expected {
            c.fail(p, format!("LR-maxima from position {ell} carry {top:?}"));
        }
        if !p.is_identity() && !p.horizontal_gaps().contains(ell) {
            c.fail(p, format!("position {ell} is not a horizontal gap"));
        }
    }
    Ok(c.finish())
}

/// Standardized non-LR-maximum entries following each horizontal gap.
pub(crate) fn gap_contents(p: &Permutation) -> Vec<Permutation> {
    let lr = p.lr_maxima();
    p.horizontal_gaps()
        .iter()
        .map(|g| {
            let run: Vec<u16> = (g + 1..=p.len())
                .take_while(|&i| !lr.contains(i))
                .map(|i| p.at(i))
                .collect();
            Permutation::standardize(&run)
        })
        .collect()
}

/// Over Av(2143, 3142): deleting the LR-maxima leaves the skew sum of the gap
/// contents.
pub fn check_staircase(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("staircase", max_n);
    let levels = ClassLab::shared().levels(&basis("2143,3142"), max_n)?;
    for p in levels.iter_upto(max_n) {
        let stacked = gap_contents(p)
            .iter()
            .fold(Permutation::empty(), |acc, b| acc.skew_sum(b));
        let deleted = p.delete_lr_maxima();
        if stacked != deleted {
            c.fail(
                p,
                format!("gap contents stack to {stacked} but deletion leaves {deleted}"),
            );
        }
    }
    Ok(c.finish())
}

/// Over all of S_n: π ∈ C(4132) exactly when deleting its leading maxima
/// leaves a 132-avoider.
pub fn check_char_4132(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("char-4132", max_n);
    let levels = ClassLab::shared().levels(&c_of("4132"), max_n)?;
    let p132 = perm("132");
    for n in 0..=max_n {
        for p in Permutation::all_of_length(n) {
            let member = levels.contains(&p);
            let stripped_avoids = !p.strip_leading_maxima().contains(&p132);
            if member != stripped_avoids {
                c.fail(
                    &p,
                    format!("member {member}, stripped avoids 132 {stripped_avoids}"),
                );
            }
        }
    }
    Ok(c.finish())
}

fn simples_upto(b: &PatternBasis, max_n: usize) -> Result<Vec<BTreeSet<Permutation>>, VerifyError> {
    let levels = ClassLab::shared().levels(b, max_n)?;
    Ok((0..=max_n)
        .map(|n| {
            levels
                .level(n)
                .iter()
                .filter(|p| p.is_simple())
                .cloned()
                .collect()
        })
        .collect())
}

/// Si(C(263514)) = Si(C(4132)) at every length.
pub fn check_simples_coincide(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("simples-coincide", max_n);
    let a = simples_upto(&c_of("263514"), max_n)?;
    let b = simples_upto(&c_of("4132"), max_n)?;
    for (sa, sb) in a.iter().zip(&b) {
        for p in sa.difference(sb) {
            c.fail(p, "simple in C(263514) only");
        }
        for p in sb.difference(sa) {
            c.fail(p, "simple in C(4132) only");
        }
    }
    Ok(c.finish())
}

/// Si(C(4132)) is {1, 12, 21} together with the constructed family T.
pub fn check_t_characterization(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("T-characterization", max_n);
    let simples = simples_upto(&c_of("4132"), max_n)?;
    for (n, s) in simples.iter().enumerate().skip(1) {
        let expected: BTreeSet<Permutation> = match n {
            1 | 2 => Permutation::all_of_length(n).into_iter().collect(),
            3 => BTreeSet::new(),
            _ => generate_t(n)?.into_iter().collect(),
        };
        for p in s.difference(&expected) {
            c.fail(p, "simple member not generated");
        }
        for p in expected.difference(s) {
            c.fail(p, "generated but not a simple member");
        }
    }
    Ok(c.finish())
}

fn is_one_of_132(p: &Permutation, i: usize) -> bool {
    let v = p.values();
    (i + 1..v.len()).any(|j| (j + 1..v.len()).any(|k| v[i] < v[k] && v[k] < v[j]))
}

fn is_three_of_213(p: &Permutation, i: usize) -> bool {
    let v = p.values();
    (0..i).any(|j| (j + 1..i).any(|k| v[k] < v[j] && v[j] < v[i]))
}

/// 1-based positions of a simple σ that must be inflated by increasing
/// blocks: those before ℓ(σ), and those after ℓ(σ) that are not LR-minima of
/// the suffix following ℓ(σ).
pub fn constrained_positions(sigma: &Permutation) -> Vec<usize> {
    let ell = sigma.leading_maxima_count();
    let tail = Permutation::standardize(&sigma.values()[ell..]);
    let minima = tail.lr_minima();
    (1..=sigma.len())
        .filter(|&i| i < ell || (i > ell && !minima.contains(i - ell)))
        .collect()
}

fn blocks_upto3() -> Vec<Permutation> {
    (2..=3).flat_map(Permutation::all_of_length).collect()
}

/// For simples σ of C(263514) with |σ| ≥ 4: the pattern roles of each entry
/// match the positional description, and small inflations stay in the class
/// exactly when constrained positions receive increasing blocks.
pub fn check_inflation_rules(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("inflation-rules", max_n);
    let class = c_of("263514");
    let simples = simples_upto(&class, max_n)?;
    let blocks = blocks_upto3();
    let pairs = Permutation::all_of_length(2);
    let one = Permutation::identity(1);
    for sigma in simples.iter().skip(4).flatten() {
        let n = sigma.len();
        let ell = sigma.leading_maxima_count();
        let constrained = constrained_positions(sigma);
        let tail_minima = Permutation::standardize(&sigma.values()[ell..]).lr_minima();
        for i in 1..=n {
            let one_of_132 = is_one_of_132(sigma, i - 1);
            let three_of_213 = is_three_of_213(sigma, i - 1);
            if one_of_132 != (i < ell) {
                c.fail(sigma, format!("position {i}: 1 of a 132 is {one_of_132}"));
            }
            if three_of_213 != (i > ell && !tail_minima.contains(i - ell)) {
                c.fail(sigma, format!("position {i}: 3 of a 213 is {three_of_213}"));
            }
        }
        let mut try_blocks = |chosen: &[(usize, &Permutation)]| -> Result<(), VerifyError> {
            let mut bs = vec![one.clone(); n];
            for &(i, b) in chosen {
                bs[i - 1] = b.clone();
            }
            let inflated = inflate(sigma, &bs)?;
            let conforming = chosen
                .iter()
                .all(|(i, b)| b.is_identity() || !constrained.contains(i));
            if class.admits(&inflated) != conforming {
                let desc: Vec<String> = chosen.iter().map(|(i, b)| format!("{b} at {i}")).collect();
                c.fail(
                    sigma,
                    format!(
                        "inflating {} gives {inflated}, member {}",
                        desc.join(", "),
                        !conforming
                    ),
                );
            }
            Ok(())
        };
        for i in 1..=n {
            for b in &blocks {
                try_blocks(&[(i, b)])?;
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for a in &pairs {
                    for b in &pairs {
                        try_blocks(&[(i, a), (j, b)])?;
                    }
                }
            }
        }
    }
    Ok(c.finish())
}

/// Does `d` follow the convention: simple skeleton (of length ≥ 2 unless the
/// permutation is 1), and a first block that does not split the same way as a
/// 12 or 21 skeleton?
fn follows_convention(d: &Deflation) -> bool {
    if !d.skeleton.is_simple() || d.blocks.len() != d.skeleton.len() {
        return false;
    }
    match d.skeleton.values() {
        [1, 2] => !d.blocks[0].is_sum_decomposable(),
        [2, 1] => !d.blocks[0].is_skew_decomposable(),
        _ => true,
    }
}

/// Every decomposition of π into consecutive value-intervals that follows the
/// convention.
pub(crate) fn all_deflations(p: &Permutation) -> Vec<Deflation> {
    let n = p.len();
    let v = p.values();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    // bit k set: a block boundary after position k + 1
    for mask in 0u32..(1 << (n - 1)) {
        if n > 1 && mask == 0 {
            continue;
        }
        let mut cuts = vec![0];
        cuts.extend((0..n - 1).filter(|k| mask >> k & 1 == 1).map(|k| k + 1));
        cuts.push(n);
        let parts: Vec<&[u16]> = cuts.windows(2).map(|w| &v[w[0]..w[1]]).collect();
        let is_interval = |s: &&[u16]| {
            let lo = *s.iter().min().unwrap();
            let hi = *s.iter().max().unwrap();
            (hi - lo) as usize + 1 == s.len()
        };
        if !parts.iter().all(is_interval) {
            continue;
        }
        let reps: Vec<u16> = parts.iter().map(|s| s[0]).collect();
        let d = Deflation {
            skeleton: Permutation::standardize(&reps),
            blocks: parts.iter().map(|s| Permutation::standardize(s)).collect(),
        };
        if follows_convention(&d) {
            out.push(d);
        }
    }
    out
}

/// Over all of S_n: `deflate` follows the convention, reinflates to π, and
/// is the only decomposition that does.
pub fn check_deflation_uniqueness(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("deflation-uniqueness", max_n);
    for n in 1..=max_n {
        for p in Permutation::all_of_length(n) {
            let d = p.deflate();
            if !follows_convention(&d) {
                c.fail(&p, format!("skeleton {} breaks the convention", d.skeleton));
            }
            if d.inflate() != p {
                c.fail(&p, "deflation does not reinflate");
            }
            let all = all_deflations(&p);
            if all.len() != 1 || all[0] != d {
                c.fail(&p, format!("{} conforming decompositions", all.len()));
            }
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_contents_example() {
        let p = perm("243156");
        assert_eq!(gap_contents(&p), vec![perm("21")]);
        assert_eq!(p.delete_lr_maxima(), perm("21"));
        assert!(gap_contents(&perm("123")).is_empty());
    }

    #[test]
    fn constrained_positions_of_2413() {
        assert_eq!(constrained_positions(&perm("2413")), vec![1, 4]);
    }

    #[test]
    fn inflation_examples() {
        let class = c_of("263514");
        let i = Permutation::identity(1);
        let stays = inflate(
            &perm("2413"),
            &[i.clone(), i.clone(), perm("21"), i.clone()],
        )
        .unwrap();
        assert!(class.admits(&stays));
        let leaves = inflate(&perm("2413"), &[perm("21"), i.clone(), i.clone(), i]).unwrap();
        assert!(!class.admits(&leaves));
        assert!(leaves.contains(&perm("2143")));
    }

    #[test]
    fn deflation_alternatives() {
        assert_eq!(all_deflations(&perm("123")), vec![perm("123").deflate()]);
        assert_eq!(perm("123").deflate().blocks, vec![perm("1"), perm("12")]);
        let d = perm("315462").deflate();
        assert_eq!(all_deflations(&perm("315462")), vec![d]);
    }

    #[test]
    fn small_budgets_pass() {
        for r in [
            check_lemma2(6),
            check_staircase(6),
            check_char_4132(6),
            check_simples_coincide(7),
            check_t_characterization(7),
            check_inflation_rules(7),
            check_deflation_uniqueness(6),
        ] {
            let r = r.unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

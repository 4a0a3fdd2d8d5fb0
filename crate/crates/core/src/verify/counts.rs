//! Counting checks against closed-form series.

use num::BigInt;

use super::{Collector, VerificationReport, VerifyError};
use crate::class::{ClassLab, PatternBasis};
use crate::perm::{perm, Permutation};
use crate::series::SeriesLab;

/// The four τ for which C(τ) is counted by the large Schröder numbers.
pub const SCHRODER_TAUS: [&str; 4] = ["254613", "524361", "546132", "263514"];

fn coefficients(name: &str, max_n: usize) -> Result<Vec<BigInt>, VerifyError> {
    let s = SeriesLab::new().named(name, max_n as u32)?;
    Ok(s.x_coefficients()
        .into_iter()
        .map(|c| c.to_integer())
        .collect())
}

/// Smallest permutation of length `n` in exactly one of the two classes.
fn first_difference(
    a: &PatternBasis,
    b: &PatternBasis,
    n: usize,
) -> Result<Option<Permutation>, VerifyError> {
    let lab = ClassLab::shared();
    let (la, lb) = (lab.levels(a, n)?, lab.levels(b, n)?);
    let only_a = la.level(n).iter().find(|p| !lb.contains(p));
    let only_b = lb.level(n).iter().find(|p| !la.contains(p));
    Ok(only_a.into_iter().chain(only_b).min().cloned())
}

/// |C_n(τ)| against the large Schröder series for each given τ. A mismatch
/// is witnessed by the smallest permutation separating C(τ) from C(254613).
pub fn check_cross_count_for(
    taus: &[Permutation],
    max_n: usize,
) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("cross-count", max_n);
    let expected = coefficients("large-schroder", max_n)?;
    let reference = PatternBasis::c(&perm("254613"))?;
    for tau in taus {
        let b = PatternBasis::c(tau)?;
        let levels = ClassLab::shared().levels(&b, max_n)?;
        for (n, want) in expected.iter().enumerate() {
            let got = levels.level(n).len();
            if BigInt::from(got) != *want {
                let reason = format!("C({tau}) has {got} members of length {n}, expected {want}");
                match first_difference(&b, &reference, n)? {
                    Some(p) => c.fail(&p, reason),
                    None => c.fail_without_perm(reason),
                }
                break;
            }
        }
    }
    Ok(c.finish())
}

pub fn check_cross_count(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let taus: Vec<Permutation> = SCHRODER_TAUS.iter().map(|t| perm(t)).collect();
    check_cross_count_for(&taus, max_n)
}

/// |C_n(4132)| against 2/(1 + x + √((1 − x)(1 − 5x))).
pub fn check_a033321(max_n: usize) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new("a033321", max_n);
    let expected = coefficients("a033321", max_n)?;
    let levels = ClassLab::shared().levels(&PatternBasis::c(&perm("4132"))?, max_n)?;
    for (n, want) in expected.iter().enumerate() {
        let got = levels.level(n).len();
        if BigInt::from(got) != *want {
            c.fail_without_perm(format!("{got} members of length {n}, expected {want}"));
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_pass() {
        assert!(check_cross_count(8).unwrap().passed());
        assert!(check_a033321(8).unwrap().passed());
    }

    #[test]
    fn corrupted_tau_fails_with_witness() {
        let r = check_cross_count_for(&[perm("254631")], 10).unwrap();
        assert!(!r.passed());
        let w = &r.witnesses[0];
        assert!(w.perm.is_some(), "{r:?}");
        assert!(w.reason.starts_with("C(254631) has"), "{}", w.reason);
    }
}

//! Element-wise checks of the structural lemmas, case decompositions and
//! bijections over exhaustively enumerated classes.

mod cases;
mod counts;
mod structure;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::ClassError;
use crate::perm::{PermError, Permutation};
use crate::series::{IdentityKind, SeriesError, SeriesLab, IDENTITIES};

pub use crate::series::Status;
pub use cases::{
    a_to_b, case_partition_254613, decomp_524361, decomp_546132, in_set_a, CaseId, CaseTag,
};
pub use cases::{
    check_bijection_a_b, check_case_partition_254613, check_decomp_524361, check_decomp_546132,
};
pub use counts::{check_a033321, check_cross_count, check_cross_count_for, SCHRODER_TAUS};
pub use structure::{
    check_char_4132, check_deflation_uniqueness, check_inflation_rules, check_lemma2,
    check_simples_coincide, check_staircase, check_t_characterization, constrained_positions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

/// A failing permutation (if the failure has one) and what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub perm: Option<Permutation>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check_id: String,
    pub max_n: usize,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub elapsed_millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Witnesses kept per report.
pub const MAX_WITNESSES: usize = 20;

/// Collects witnesses for one report; shortest permutations are kept first.
pub(crate) struct Collector {
    check_id: String,
    max_n: usize,
    started: Instant,
    witnesses: Vec<Witness>,
    total: usize,
}

impl Collector {
    pub(crate) fn new(check_id: &str, max_n: usize) -> Self {
        Collector {
            check_id: check_id.to_string(),
            max_n,
            started: Instant::now(),
            witnesses: Vec::new(),
            total: 0,
        }
    }

    pub(crate) fn fail(&mut self, perm: &Permutation, reason: impl Into<String>) {
        self.push(Some(perm.clone()), reason.into());
    }

    pub(crate) fn fail_without_perm(&mut self, reason: impl Into<String>) {
        self.push(None, reason.into());
    }

    fn push(&mut self, perm: Option<Permutation>, reason: String) {
        self.total += 1;
        self.witnesses.push(Witness { perm, reason });
        if self.witnesses.len() > 4 * MAX_WITNESSES {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.witnesses.sort_by(|a, b| {
            let key = |w: &Witness| w.perm.as_ref().map(|p| (p.len(), p.clone()));
            key(a).cmp(&key(b))
        });
        self.witnesses.truncate(MAX_WITNESSES);
    }

    pub(crate) fn finish(mut self) -> VerificationReport {
        self.trim();
        let status = if self.total == 0 {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            check_id: self.check_id,
            max_n: self.max_n,
            status,
            witnesses: self.witnesses,
            elapsed_millis: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// The registered structural checks, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Lemma2,
    Staircase,
    Char4132,
    CasePartition254613,
    Decomp524361,
    Decomp546132,
    BijectionAB,
    SimplesCoincide,
    TCharacterization,
    InflationRules,
    DeflationUniqueness,
    CrossCount,
    A033321,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::Lemma2,
        Check::Staircase,
        Check::Char4132,
        Check::CasePartition254613,
        Check::Decomp524361,
        Check::Decomp546132,
        Check::BijectionAB,
        Check::SimplesCoincide,
        Check::TCharacterization,
        Check::InflationRules,
        Check::DeflationUniqueness,
        Check::CrossCount,
        Check::A033321,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Lemma2 => "lemma2",
            Check::Staircase => "staircase",
            Check::Char4132 => "char-4132",
            Check::CasePartition254613 => "case-partition-254613",
            Check::Decomp524361 => "decomp-524361",
            Check::Decomp546132 => "decomp-546132",
            Check::BijectionAB => "bijection-A-B",
            Check::SimplesCoincide => "simples-coincide",
            Check::TCharacterization => "T-characterization",
            Check::InflationRules => "inflation-rules",
            Check::DeflationUniqueness => "deflation-uniqueness",
            Check::CrossCount => "cross-count",
            Check::A033321 => "a033321",
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            Check::CrossCount | Check::A033321 => 10,
            Check::DeflationUniqueness => 7,
            _ => 8,
        }
    }

    /// Counting checks are cheap relative to element-wise ones.
    fn is_counting(self) -> bool {
        matches!(self, Check::CrossCount | Check::A033321)
    }

    pub fn run(self, max_n: usize) -> Result<VerificationReport, VerifyError> {
        match self {
            Check::Lemma2 => check_lemma2(max_n),
            Check::Staircase => check_staircase(max_n),
            Check::Char4132 => check_char_4132(max_n),
            Check::CasePartition254613 => check_case_partition_254613(max_n),
            Check::Decomp524361 => check_decomp_524361(max_n),
            Check::Decomp546132 => check_decomp_546132(max_n),
            Check::BijectionAB => check_bijection_a_b(max_n),
            Check::SimplesCoincide => check_simples_coincide(max_n),
            Check::TCharacterization => check_t_characterization(max_n),
            Check::InflationRules => check_inflation_rules(max_n),
            Check::DeflationUniqueness => check_deflation_uniqueness(max_n),
            Check::CrossCount => check_cross_count(max_n),
            Check::A033321 => check_a033321(max_n),
        }
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('_', "-");
        Check::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub fn run_check(id: &str, max_n: usize) -> Result<VerificationReport, VerifyError> {
    id.parse::<Check>()?.run(max_n)
}

/// Report for one series identity; the mismatch, if any, is the witness.
pub fn identity_report(
    lab: &SeriesLab<'_>,
    id: &str,
    order: u32,
) -> Result<VerificationReport, VerifyError> {
    let mut c = Collector::new(&format!("identity:{id}"), order as usize);
    let check = lab.check(id, order)?;
    if let Some(m) = check.first_mismatch {
        let [a, b, u] = m.exponents;
        c.fail_without_perm(format!(
            "coefficient of x^{a} t^{b} u^{u}: {} vs {}",
            m.lhs, m.rhs
        ));
    }
    Ok(c.finish())
}

/// Every structural check at `max_n` (counting checks at `max_n + 2`) and
/// every series identity at `order`, enumeration-backed ones capped at their
/// default order.
pub fn run_all(max_n: usize, order: u32) -> Result<Vec<VerificationReport>, VerifyError> {
    let mut reports = Vec::new();
    for check in Check::ALL {
        let n = if check.is_counting() {
            max_n + 2
        } else {
            max_n
        };
        reports.push(check.run(n)?);
    }
    let lab = SeriesLab::new();
    for spec in IDENTITIES {
        let o = match spec.kind {
            IdentityKind::Closed => order,
            IdentityKind::Enumerated => order.min(spec.kind.default_order()),
        };
        reports.push(identity_report(&lab, spec.id, o)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    #[test]
    fn check_ids_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.id().parse::<Check>().unwrap(), c);
        }
        assert_eq!(
            "t_characterization".parse::<Check>().unwrap(),
            Check::TCharacterization
        );
        assert!(matches!(
            run_check("nope", 3),
            Err(VerifyError::UnknownCheck(_))
        ));
    }

    #[test]
    fn collector_keeps_shortest_first() {
        let mut c = Collector::new("x", 5);
        for p in ["4321", "21", "312"] {
            c.fail(&perm(p), "bad");
        }
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        let order: Vec<_> = r
            .witnesses
            .iter()
            .map(|w| w.perm.clone().unwrap())
            .collect();
        assert_eq!(order, [perm("21"), perm("312"), perm("4321")]);
    }

    #[test]
    fn report_json_shape() {
        let mut r = Collector::new("lemma2", 3).finish();
        r.elapsed_millis = 7;
        assert_eq!(
            r.to_json(),
            r#"{"checkId":"lemma2","maxN":3,"status":"pass","witnesses":[],"elapsedMillis":7}"#
        );
    }

    #[test]
    fn run_all_vacuous() {
        let reports = run_all(0, 1).unwrap();
        assert_eq!(reports.len(), Check::ALL.len() + IDENTITIES.len());
        assert!(
            reports.iter().all(VerificationReport::passed),
            "{reports:?}"
        );
    }
}

//! Registry of identities between named series, each checked by comparing
//! both sides coefficient by coefficient.

use serde::{Deserialize, Serialize};

use super::lab::SeriesLab;
use super::{MSeries, Mono, Ring, SeriesError, Var, MAX_ENUMERATION_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// Only closed forms and fixed-point solutions.
    Closed,
    /// At least one side comes from class enumeration.
    Enumerated,
}

impl IdentityKind {
    pub fn default_order(self) -> u32 {
        match self {
            IdentityKind::Closed => 20,
            IdentityKind::Enumerated => 10,
        }
    }

    pub fn max_order(self) -> Option<u32> {
        match self {
            IdentityKind::Closed => None,
            IdentityKind::Enumerated => Some(MAX_ENUMERATION_ORDER),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub kind: IdentityKind,
    pub statement: &'static str,
}

const fn closed(id: &'static str, statement: &'static str) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: IdentityKind::Closed,
        statement,
    }
}

const fn enumerated(id: &'static str, statement: &'static str) -> IdentitySpec {
    IdentitySpec {
        id,
        kind: IdentityKind::Enumerated,
        statement,
    }
}

pub const IDENTITIES: &[IdentitySpec] = &[
    enumerated(
        "A1-eq2",
        "A1-enum solves the extraction equation for C(254613)",
    ),
    closed("cubic-B", "B^2 + (x - 3)B + 2 = 0 for B = large-schroder"),
    closed("kernel-xt", "x t(x) B = B - 1 for t = little-schroder"),
    closed(
        "kernel3-zero",
        "the C(254613) kernel vanishes at t = little-schroder, B = large-schroder",
    ),
    enumerated("A2-eq5", "A2-enum solves the C(524361) equation"),
    enumerated("Y-closed", "Y-enum equals the closed form of Y"),
    enumerated("Z-closed", "Z-enum equals tx(C* - 1)/(1 - xC*)"),
    closed("Z-from-Y", "Z = (1 - tx)Y - 1"),
    closed(
        "eq12-zero",
        "t^2 x + (t - 1)xC* - (t - 1) = 0 at t = t-kernel",
    ),
    closed("eq13", "B(1 - tx) = 1 for t = little-schroder"),
    closed(
        "t-closed",
        "little-schroder solves t^2 x + (t - 1)xC* - (t - 1) = 0",
    ),
    enumerated("A3-eq", "A3-enum solves the C(546132) equation"),
    closed("Y-eq-3.3", "Y solves the gap equation over C(4132)"),
    enumerated("hg-system", "h-enum and g-enum solve the Av(132) system"),
    enumerated(
        "C3-from-hg",
        "C3-enum equals x(h - 1)/(1 - xt) + utx^2/(1 - xt)",
    ),
    closed(
        "s-two-ways",
        "monomial summation over C(t,u,x) equals the closed form of s",
    ),
    enumerated(
        "s-vs-simples",
        "simples of C(263514) counted by (n - lrmin - 1, lrmin + 1) give s",
    ),
    enumerated(
        "f-plus",
        "sum-decomposables of C(263514) are counted by 2xf - x^2(f + 1)",
    ),
    enumerated(
        "f-minus",
        "skew-decomposables of C(263514) are counted by f^2/(1 + f)",
    ),
    closed("f-schroder", "1 + f = large-schroder"),
    closed("Y-at-1", "Y(1, x) = 2/(1 + x + sqrt((1 - x)(1 - 5x)))"),
];

pub fn identity_spec(id: &str) -> Option<&'static IdentitySpec> {
    IDENTITIES.iter().find(|s| s.id == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First monomial, in grade order, where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Exponents of x, t, u.
    pub exponents: Mono,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityCheck {
    pub id: String,
    pub order: u32,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn first_mismatch(sides: &[(MSeries, MSeries)]) -> Option<Mismatch> {
    sides
        .iter()
        .filter_map(|(l, r)| {
            l.first_difference(r).map(|m| {
                let key = (l.grading().grade(&m), m);
                (
                    key,
                    Mismatch {
                        exponents: m,
                        lhs: l.coeff(m).to_string(),
                        rhs: r.coeff(m).to_string(),
                    },
                )
            })
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, m)| m)
}

impl SeriesLab<'_> {
    /// Checks identity `id` through `order`.
    pub fn check(&self, id: &str, order: u32) -> Result<IdentityCheck, SeriesError> {
        let spec = identity_spec(id).ok_or_else(|| SeriesError::UnknownIdentity(id.to_string()))?;
        if let Some(max) = spec.kind.max_order() {
            if order > max {
                return Err(SeriesError::Depth {
                    name: id.to_string(),
                    order,
                    max,
                });
            }
        }
        let sides = self.sides(spec.id, order)?;
        let first_mismatch = first_mismatch(&sides);
        let status = if first_mismatch.is_none() {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok(IdentityCheck {
            id: id.to_string(),
            order,
            status,
            first_mismatch,
        })
    }

    /// Every registered identity at its default order.
    pub fn check_all(&self) -> Vec<(&'static str, Result<IdentityCheck, SeriesError>)> {
        IDENTITIES
            .iter()
            .map(|s| (s.id, self.check(s.id, s.kind.default_order())))
            .collect()
    }

    fn sides(&self, id: &str, n: u32) -> Result<Vec<(MSeries, MSeries)>, SeriesError> {
        let r = Ring::x_graded(n);
        let zero = r.zero();
        let named = |name: &str| self.named(name, n);
        let pair = |l: MSeries, r: MSeries| Ok(vec![(l, r)]);
        match id {
            "A1-eq2" => {
                let a1 = named("A1-enum")?;
                let rhs = self.a1_rhs(&a1, n)?;
                pair(a1, rhs)
            }
            "cubic-B" => pair(self.cubic(&named("large-schroder")?, n), zero),
            "kernel-xt" => {
                let (l, r) =
                    self.kernel_xt_sides(&named("little-schroder")?, &named("large-schroder")?, n);
                pair(l, r)
            }
            "kernel3-zero" => pair(
                self.kernel3(&named("little-schroder")?, &named("large-schroder")?, n),
                zero,
            ),
            "A2-eq5" => {
                let a2 = named("A2-enum")?;
                let rhs = self.a23_rhs(&a2, n, true)?;
                pair(a2, rhs)
            }
            "A3-eq" => {
                let a3 = named("A3-enum")?;
                let rhs = self.a23_rhs(&a3, n, false)?;
                pair(a3, rhs)
            }
            "Y-closed" => pair(named("Y-enum")?, named("Y")?),
            "Z-closed" => pair(named("Z-enum")?, named("Z")?),
            "Z-from-Y" => {
                let tx = r.t() * r.x();
                pair(named("Z")?, (1 - tx) * named("Y")? - 1)
            }
            "eq12-zero" => pair(self.eq12(&named("t-kernel")?, n)?, zero),
            "t-closed" => pair(self.eq12(&named("little-schroder")?, n)?, zero),
            "eq13" => {
                let b = named("large-schroder")?;
                let tx = named("little-schroder")? * r.x();
                pair(b * (1 - tx), r.int(1))
            }
            "Y-eq-3.3" => {
                let y = named("Y")?;
                let rhs = self.y_rhs(&y, n)?;
                pair(y, rhs)
            }
            "hg-system" => {
                let h = named("h-enum")?;
                let g = named("g-enum")?;
                let (h2, g2) = self.hg_map(&h, &g, n)?;
                Ok(vec![(h, h2), (g, g2)])
            }
            "C3-from-hg" => pair(named("C3-enum")?, self.c3_of(&named("h-enum")?)),
            "s-two-ways" => pair(named("s-substituted")?, named("s-closed")?),
            "s-vs-simples" => pair(named("s-simples")?, named("s-closed")?),
            "f-plus" => pair(named("f-plus-enum")?, self.f_plus(&named("f-enum")?)),
            "f-minus" => pair(named("f-minus-enum")?, self.f_minus(&named("f-enum")?)?),
            "f-schroder" => pair(1 + named("f")?, named("large-schroder")?),
            "Y-at-1" => {
                let y1 = named("Y")?.substitute(&[(Var::T, &r.int(1))])?;
                pair(y1, named("a033321")?)
            }
            _ => Err(SeriesError::UnknownIdentity(id.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Mutation;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = IDENTITIES.iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), IDENTITIES.len());
    }

    #[test]
    fn closed_identities_pass_at_low_order() {
        let lab = SeriesLab::new();
        for spec in IDENTITIES.iter().filter(|s| s.kind == IdentityKind::Closed) {
            let c = lab.check(spec.id, 8).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn enumerated_identities_pass_at_low_order() {
        let lab = SeriesLab::new();
        for spec in IDENTITIES
            .iter()
            .filter(|s| s.kind == IdentityKind::Enumerated)
        {
            let c = lab.check(spec.id, 7).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn mutated_cubic_reports_mismatch() {
        let lab = SeriesLab::new().mutated(Mutation::CubicSign);
        let c = lab.check("cubic-B", 6).unwrap();
        assert_eq!(c.status, Status::Fail);
        let m = c.first_mismatch.unwrap();
        assert_eq!(m.exponents, [0, 0, 0]);
        assert_eq!((m.lhs.as_str(), m.rhs.as_str()), ("6", "0"));
    }

    #[test]
    fn json_shape() {
        let c = SeriesLab::new().check("eq13", 4).unwrap();
        assert_eq!(
            c.to_json(),
            r#"{"id":"eq13","order":4,"status":"pass","firstMismatch":null}"#
        );
    }

    #[test]
    fn unknown_and_too_deep() {
        let lab = SeriesLab::new();
        assert!(matches!(
            lab.check("nope", 3),
            Err(SeriesError::UnknownIdentity(_))
        ));
        assert!(matches!(
            lab.check("A1-eq2", MAX_ENUMERATION_ORDER + 1),
            Err(SeriesError::Depth { .. })
        ));
    }
}

//! Named series: closed forms, fixed-point solutions, and enumeration-backed
//! polynomials built from refined class counts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num::{BigInt, One};

use super::fixed::{fixed_point, Equation};
use super::{Grading, MSeries, Rational, Ring, SeriesError, Var};
use crate::class::{ClassLab, Filter, PatternBasis, RefinedCountTable, Stat};
use crate::perm::{perm, Permutation};

/// Enumeration-backed series are limited to this x-order.
pub const MAX_ENUMERATION_ORDER: u32 = 11;

/// Every name accepted by [`SeriesLab::named`].
pub const NAMED_SERIES: &[&str] = &[
    "catalan",
    "large-schroder",
    "little-schroder",
    "C-star",
    "Y",
    "Z",
    "D2",
    "D3",
    "B-cubic-root",
    "t-kernel",
    "h",
    "g",
    "C3",
    "s-substituted",
    "s-closed",
    "f",
    "f-plus",
    "f-minus",
    "A1-enum",
    "A2-enum",
    "A3-enum",
    "Y-enum",
    "Z-enum",
    "h-enum",
    "g-enum",
    "C3-enum",
    "s-simples",
    "f-enum",
    "f-plus-enum",
    "f-minus-enum",
    "Y-at-1",
    "a033321",
];

/// Single deliberate corruptions of registered formulas, used to show that
/// the identity registry detects each one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// E(t,x) without the subtracted 1/(1 − tx).
    ExtractionShift,
    /// Block-insertion factor with x(B − 1) in place of tx(B − 1).
    BlockFactor,
    /// B² + (x + 3)B + 2.
    CubicSign,
    /// x t(x) B = B + 1.
    KernelXt,
    /// Kernel polynomial missing its −Btx² term.
    KernelTerm,
    /// C* = C(x/(1 + tx)).
    CStarSign,
    /// Y numerator with (tx + x)C*.
    YNumerator,
    /// Z without its factor t.
    ZMissingT,
    /// D without the subtracted C*/(1 − tx).
    DWithoutCStar,
    /// The third term of the A₃ equation carrying a factor t.
    A3ExtraT,
    /// The third term of the A₂ equation missing its factor Z.
    A2MissingZ,
    /// t²x − (t − 1)xC* − (t − 1).
    KernelSign,
    /// The one-gap term of the Y equation without its 1/(1 − x).
    YEquationFactor,
    /// Last term of the h equation with x in place of ux.
    HgUx,
    /// C(t,u,x) without utx²/(1 − xt).
    C3Tail,
    /// The printed radical taken on the branch with constant term +1.
    SPrincipalBranch,
    /// (1 + u)^(n − b) in the monomial form of s.
    SMonomialExponent,
    /// f⊕ = 2xf, counting 1 ⊕ π ⊕ 1 twice.
    FPlusOvercount,
    /// f⊖ = f²/(1 − f).
    FMinusSign,
    /// Little Schröder numerator 1 − x − √….
    LittleSchroderNumerator,
    /// Large Schröder numerator 3 + x − √….
    LargeSchroderNumerator,
}

impl Mutation {
    pub const ALL: [Mutation; 21] = [
        Mutation::ExtractionShift,
        Mutation::BlockFactor,
        Mutation::CubicSign,
        Mutation::KernelXt,
        Mutation::KernelTerm,
        Mutation::CStarSign,
        Mutation::YNumerator,
        Mutation::ZMissingT,
        Mutation::DWithoutCStar,
        Mutation::A3ExtraT,
        Mutation::A2MissingZ,
        Mutation::KernelSign,
        Mutation::YEquationFactor,
        Mutation::HgUx,
        Mutation::C3Tail,
        Mutation::SPrincipalBranch,
        Mutation::SMonomialExponent,
        Mutation::FPlusOvercount,
        Mutation::FMinusSign,
        Mutation::LittleSchroderNumerator,
        Mutation::LargeSchroderNumerator,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Mutation::ExtractionShift => "extraction-shift",
            Mutation::BlockFactor => "block-factor",
            Mutation::CubicSign => "cubic-sign",
            Mutation::KernelXt => "kernel-xt",
            Mutation::KernelTerm => "kernel-term",
            Mutation::CStarSign => "c-star-sign",
            Mutation::YNumerator => "y-numerator",
            Mutation::ZMissingT => "z-missing-t",
            Mutation::DWithoutCStar => "d-without-c-star",
            Mutation::A3ExtraT => "a3-extra-t",
            Mutation::A2MissingZ => "a2-missing-z",
            Mutation::KernelSign => "kernel-sign",
            Mutation::YEquationFactor => "y-equation-factor",
            Mutation::HgUx => "hg-ux",
            Mutation::C3Tail => "c3-tail",
            Mutation::SPrincipalBranch => "s-principal-branch",
            Mutation::SMonomialExponent => "s-monomial-exponent",
            Mutation::FPlusOvercount => "f-plus-overcount",
            Mutation::FMinusSign => "f-minus-sign",
            Mutation::LittleSchroderNumerator => "little-schroder-numerator",
            Mutation::LargeSchroderNumerator => "large-schroder-numerator",
        }
    }
}

impl FromStr for Mutation {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| SeriesError::UnknownSeries(format!("mutation {s}")))
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Builds named series, optionally under one [`Mutation`], memoizing results.
pub struct SeriesLab<'a> {
    mutation: Option<Mutation>,
    classes: &'a ClassLab,
    memo: Mutex<HashMap<(String, u32), MSeries>>,
}

impl SeriesLab<'static> {
    pub fn new() -> Self {
        SeriesLab::with_classes(ClassLab::shared())
    }
}

impl Default for SeriesLab<'static> {
    fn default() -> Self {
        Self::new()
    }
}

impl<'a> SeriesLab<'a> {
    pub fn with_classes(classes: &'a ClassLab) -> Self {
        SeriesLab {
            mutation: None,
            classes,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn mutated(mut self, mutation: Mutation) -> Self {
        self.mutation = Some(mutation);
        self
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn named(&self, name: &str, order: u32) -> Result<MSeries, SeriesError> {
        let key = (name.to_string(), order);
        if let Some(s) = self.memo.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = self.build(name, order)?;
        self.memo.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn build(&self, name: &str, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        Ok(match name {
            "catalan" => self.solve(Equation::Catalan, n)?.remove(0),
            "large-schroder" => self.large_schroder(n)?,
            "little-schroder" => self.little_schroder(n)?,
            "C-star" => self.c_star_at(&r.t(), n)?,
            "Y" => self.y_closed(n)?,
            "Z" => self.z_closed(n)?,
            "D2" => self.d_of(&self.named("A2-enum", n)?, n)?,
            "D3" => self.d_of(&self.named("A3-enum", n)?, n)?,
            "B-cubic-root" => self.solve(Equation::BCubicRoot, n)?.remove(0),
            "t-kernel" => self.solve(Equation::TKernel, n)?.remove(0),
            "h" => self.solve(Equation::Hg, n)?.remove(0),
            "g" => self.solve(Equation::Hg, n)?.remove(1),
            "C3" => self.c3_of(&self.named("h", n)?),
            "s-substituted" => self.s_substituted(n)?,
            "s-closed" => self.s_closed(n)?,
            "f" => self.solve(Equation::F, n)?.remove(0),
            "f-plus" => self.f_plus(&self.named("f", n)?),
            "f-minus" => self.f_minus(&self.named("f", n)?)?,
            "Y-at-1" => self.named("Y", n)?.substitute(&[(Var::T, &r.int(1))])?,
            "a033321" => {
                let x = r.x();
                let radicand = (1 - &x) * (1 - 5 * &x);
                2 * (1 + &x + radicand.sqrt1()?).reciprocal()?
            }
            _ => self.enumerated(name, n)?,
        })
    }

    fn enumerated(&self, name: &str, n: u32) -> Result<MSeries, SeriesError> {
        use Filter::*;
        let c = |tau: &str| PatternBasis::c(&perm(tau)).map_err(SeriesError::from);
        let av132 = || PatternBasis::new([perm("132")]).map_err(SeriesError::from);
        let ell = [Stat::LeadingMaxima];
        let bond_lrmin = [Stat::Bond, Stat::LrMin];
        let tu = [Var::T, Var::U];
        let (basis, stats, filter, vars): (PatternBasis, &[Stat], Filter, &[Var]) = match name {
            "A1-enum" => (c("254613")?, &ell, None, &[Var::T]),
            "A2-enum" => (c("524361")?, &ell, None, &[Var::T]),
            "A3-enum" => (c("546132")?, &ell, None, &[Var::T]),
            "Y-enum" => (c("4132")?, &ell, None, &[Var::T]),
            "Z-enum" => (c("4132")?, &ell, FirstEntryNotOne, &[Var::T]),
            "h-enum" => (av132()?, &bond_lrmin, LastEntryNotLength, &tu),
            "g-enum" => (av132()?, &bond_lrmin, FirstEntryNotMax, &tu),
            "C3-enum" => (av132()?, &bond_lrmin, LastEntryEqualsLength, &tu),
            "f-enum" | "f-plus-enum" | "f-minus-enum" | "s-simples" => {
                return self.enumerated_263514(name, n)
            }
            _ => return Err(SeriesError::UnknownSeries(name.to_string())),
        };
        self.check_depth(name, n)?;
        let levels = self.classes.levels(&basis, n as usize)?;
        let table = RefinedCountTable::from_levels(&levels, n as usize, stats, filter);
        let mut s = table_series(&table, vars, n);
        if name == "Z-enum" {
            s = s - 1; // ∅ passes the filter but is excluded from Z
        }
        if name == "C3-enum" {
            // only n ≥ 2 contributes
            s = MSeries::from_terms(
                s.terms()
                    .filter(|(m, _)| m[0] >= 2)
                    .map(|(m, c)| (*m, c.clone())),
                Grading::XDegree,
                n,
            );
        }
        Ok(s)
    }

    fn enumerated_263514(&self, name: &str, n: u32) -> Result<MSeries, SeriesError> {
        self.check_depth(name, n)?;
        let basis = PatternBasis::c(&perm("263514"))?;
        let levels = self.classes.levels(&basis, n as usize)?;
        if name == "s-simples" {
            let mut terms = Vec::new();
            for p in levels
                .iter_upto(n as usize)
                .filter(|p| p.len() >= 4 && p.is_simple())
            {
                let m = p.strip_leading_maxima().lr_minima().len() as u32;
                let len = p.len() as u32;
                terms.push(([m + 1, 0, len - m - 1], Rational::one()));
            }
            return Ok(MSeries::from_terms(terms, Grading::Total, n));
        }
        let keep: fn(&Permutation) -> bool = match name {
            "f-enum" => |p| !p.is_empty(),
            "f-plus-enum" => |p| p.is_sum_decomposable(),
            _ => |p| p.is_skew_decomposable(),
        };
        let coeffs: Vec<BigInt> = (0..=n as usize)
            .map(|k| BigInt::from(levels.level(k).iter().filter(|p| keep(p)).count()))
            .collect();
        Ok(MSeries::from_x_coefficients(&coeffs, n))
    }

    fn check_depth(&self, name: &str, n: u32) -> Result<(), SeriesError> {
        if n > MAX_ENUMERATION_ORDER {
            return Err(SeriesError::Depth {
                name: name.to_string(),
                order: n,
                max: MAX_ENUMERATION_ORDER,
            });
        }
        Ok(())
    }

    pub fn solve(&self, eq: Equation, n: u32) -> Result<Vec<MSeries>, SeriesError> {
        let one = || Ring::x_graded(0).int(1);
        match eq {
            Equation::Catalan => fixed_point(eq.id(), n, vec![one()], |y, w| {
                let x = Ring::x_graded(w).x();
                Ok(vec![1 + &x * &y[0] * &y[0]])
            }),
            Equation::BCubicRoot => {
                let s = fixed_point(eq.id(), n, vec![one()], |y, w| {
                    let x = Ring::x_graded(w).x();
                    Ok(vec![1 + &x * &y[0] + &x * &y[0] * &y[0]])
                })?;
                let x = Ring::x_graded(n).x();
                Ok(vec![1 + x * &s[0]])
            }
            Equation::TKernel => {
                let catalan = self.named("catalan", n)?;
                fixed_point(eq.id(), n, vec![one()], |y, w| {
                    let x = Ring::x_graded(w).x();
                    let t = &y[0];
                    let cs = self.c_star_from(&catalan.truncate(w), t, w)?;
                    let t2x = t * t * &x;
                    let mixed = (t - 1) * &x * cs;
                    Ok(vec![if self.is(Mutation::KernelSign) {
                        1 + t2x - mixed
                    } else {
                        1 + t2x + mixed
                    }])
                })
            }
            Equation::Hg => fixed_point(eq.id(), n, vec![one(), one()], |y, w| {
                let (h, g) = self.hg_map(&y[0], &y[1], w)?;
                Ok(vec![h, g])
            }),
            Equation::F => {
                let s = self.named("s-closed", n)?;
                fixed_point(eq.id(), n, vec![Ring::x_graded(0).zero()], |y, w| {
                    let x = Ring::x_graded(w).x();
                    let f = &y[0];
                    let u_image = &x / (1 - &x);
                    let s_sub = s
                        .truncate(w)
                        .substitute(&[(Var::X, f), (Var::U, &u_image)])?;
                    Ok(vec![&x + self.f_minus(f)? + self.f_plus(f) + s_sub])
                })
            }
        }
    }

    /// (3 − x − √(1 − 6x + x²))/2
    fn large_schroder(&self, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let x = r.x();
        let root = (1 - 6 * &x + &x * &x).sqrt1()?;
        let lead = if self.is(Mutation::LargeSchroderNumerator) {
            3 + &x
        } else {
            3 - &x
        };
        Ok((lead - root) * r.rat(1, 2))
    }

    /// (1 + x − √(1 − 6x + x²))/(4x)
    fn little_schroder(&self, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n + 1);
        let x = r.x();
        let root = (1 - 6 * &x + &x * &x).sqrt1()?;
        let lead = if self.is(Mutation::LittleSchroderNumerator) {
            1 - &x
        } else {
            1 + &x
        };
        Ok((lead - root).div_x()? * Ring::x_graded(n).rat(1, 4))
    }

    /// C(x/(1 − tx)) for a given image of t (a variable or a series in x).
    pub(crate) fn c_star_at(&self, t: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let catalan = self.named("catalan", n)?;
        self.c_star_from(&catalan, t, n)
    }

    fn c_star_from(&self, catalan: &MSeries, t: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let x = Ring::x_graded(n).x();
        let tx = t * &x;
        let z = if self.is(Mutation::CStarSign) {
            &x / (1 + tx)
        } else {
            &x / (1 - tx)
        };
        catalan.substitute(&[(Var::X, &z)])
    }

    pub(crate) fn c_star(&self, n: u32) -> Result<MSeries, SeriesError> {
        self.named("C-star", n)
    }

    /// (1 − tx + (tx − x)C*) / ((1 − xC*)(1 − tx))
    fn y_closed(&self, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let (x, t) = (r.x(), r.t());
        let cs = self.c_star(n)?;
        let tx = &t * &x;
        let coef = if self.is(Mutation::YNumerator) {
            &tx + &x
        } else {
            &tx - &x
        };
        let num = 1 - &tx + coef * &cs;
        Ok(num / ((1 - &x * &cs) * (1 - &tx)))
    }

    /// tx(C* − 1)/(1 − xC*)
    fn z_closed(&self, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let (x, t) = (r.x(), r.t());
        let cs = self.c_star(n)?;
        let lead = if self.is(Mutation::ZMissingT) {
            x.clone()
        } else {
            &t * &x
        };
        Ok(lead * (&cs - 1) / (1 - &x * &cs))
    }

    /// (A(1,x) − tA)/(1 − t) − C*/(1 − tx)
    pub(crate) fn d_of(&self, a: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let (x, t) = (r.x(), r.t());
        let a = a.truncate(n);
        let at1 = a.substitute(&[(Var::T, &r.int(1))])?;
        let extraction = (at1 - &t * &a).div_one_minus(Var::T)?;
        if self.is(Mutation::DWithoutCStar) {
            return Ok(extraction);
        }
        Ok(extraction - self.c_star(n)? / (1 - &t * &x))
    }

    /// Right-hand side of the A₁ functional equation.
    pub(crate) fn a1_rhs(&self, a1: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let (x, t) = (r.x(), r.t());
        let a1 = a1.truncate(n);
        let b = a1.substitute(&[(Var::T, &r.int(1))])?;
        let tx = &t * &x;
        let inc = (1 - &tx).reciprocal()?;
        let mut e = (&b - &t * &a1).div_one_minus(Var::T)?;
        if !self.is(Mutation::ExtractionShift) {
            e = e - &inc;
        }
        let case2 = &tx * &e / (1 - &x);
        let gap = &x * (&b - 1) / ((1 - &x) * (1 - &tx));
        let lead = if self.is(Mutation::BlockFactor) {
            x.clone()
        } else {
            tx.clone()
        };
        let blocks = (1 - lead * (&b - 1) / (1 - &tx)).reciprocal()?;
        Ok(&inc + case2 + (&a1 - &inc) * gap * blocks)
    }

    /// Right-hand side shared by the A₂ and A₃ equations.
    pub(crate) fn a23_rhs(&self, a: &MSeries, n: u32, a2: bool) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let (x, t) = (r.x(), r.t());
        let d = self.d_of(a, n)?;
        let y = self.named("Y", n)?;
        let z = self.named("Z", n)?;
        let one_gap = &t * &x * &d / (1 - &x);
        let mut multi = &x * &d / (1 - &x);
        if !(a2 && self.is(Mutation::A2MissingZ)) {
            multi = multi * z;
        }
        if !a2 && self.is(Mutation::A3ExtraT) {
            multi = multi * &t;
        }
        Ok(y + one_gap + multi)
    }

    /// Right-hand side of the Y equation.
    pub(crate) fn y_rhs(&self, y: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::x_graded(n);
        let (x, t) = (r.x(), r.t());
        let cs = self.c_star(n)?;
        let tx = &t * &x;
        let inc = (1 - &tx).reciprocal()?;
        let mut one_gap = &tx * (&cs - 1) / (1 - &tx);
        if !self.is(Mutation::YEquationFactor) {
            one_gap = one_gap / (1 - &x);
        }
        let multi = &x / (1 - &x) * (y - &inc) * (&cs - 1);
        Ok(inc + one_gap + multi)
    }

    /// t²x + (t − 1)xC* − (t − 1) for a series t(x).
    pub(crate) fn eq12(&self, t: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let x = Ring::x_graded(n).x();
        let cs = self.c_star_at(t, n)?;
        let mixed = (t - 1) * &x * cs;
        let t2x = t * t * &x;
        Ok(if self.is(Mutation::KernelSign) {
            t2x - mixed - (t - 1)
        } else {
            t2x + mixed - (t - 1)
        })
    }

    pub(crate) fn cubic(&self, b: &MSeries, n: u32) -> MSeries {
        let x = Ring::x_graded(n).x();
        let lin = if self.is(Mutation::CubicSign) {
            &x + 3
        } else {
            &x - 3
        };
        b * b + lin * b + 2
    }

    pub(crate) fn kernel_xt_sides(&self, t: &MSeries, b: &MSeries, n: u32) -> (MSeries, MSeries) {
        let x = Ring::x_graded(n).x();
        let rhs = if self.is(Mutation::KernelXt) {
            b + 1
        } else {
            b - 1
        };
        (x * t * b, rhs)
    }

    /// Bt³x² + Bt²x² − Bt²x − Btx² + Bx − t²x + t − 1
    pub(crate) fn kernel3(&self, t: &MSeries, b: &MSeries, n: u32) -> MSeries {
        let x = Ring::x_graded(n).x();
        let x2 = &x * &x;
        let t2 = t * t;
        let t3 = &t2 * t;
        let mut k = b * &t3 * &x2 + b * &t2 * &x2 - b * &t2 * &x + b * &x - &t2 * &x + t - 1;
        if !self.is(Mutation::KernelTerm) {
            k = k - b * t * &x2;
        }
        k
    }

    /// One application of the h and g equations.
    pub(crate) fn hg_map(
        &self,
        h: &MSeries,
        g: &MSeries,
        w: u32,
    ) -> Result<(MSeries, MSeries), SeriesError> {
        let r = Ring::x_graded(w);
        let (x, t, u) = (r.x(), r.t(), r.u());
        let tx = &t * &x;
        let ux = &u * &x;
        let tux = &t * &ux;
        let p1 = (h - 1) * &tx / (1 - &tx) + h + &t * &ux / (1 - &tx) - 1;
        let rows = &ux / (1 - &tux) * g + g;
        let last_lead = if self.is(Mutation::HgUx) {
            x.clone()
        } else {
            ux.clone()
        };
        let h_next = 1 + &x * &p1 * (&rows - 1) + last_lead * (&tux / (1 - &tux) * g + g - 1);
        let g_next = 1 + &x * &p1 * rows;
        Ok((h_next, g_next))
    }

    /// x(h − 1)/(1 − xt) + utx²/(1 − xt)
    pub(crate) fn c3_of(&self, h: &MSeries) -> MSeries {
        let r = Ring::x_graded(h.order());
        let (x, t, u) = (r.x(), r.t(), r.u());
        let denom = 1 - &x * &t;
        let head = &x * (h - 1) / &denom;
        if self.is(Mutation::C3Tail) {
            return head;
        }
        head + &u * &t * &x * &x / denom
    }

    /// −x(−1 + u + 3ux + ux² + R)/(2(u + 1)(x + 1)), R the power-series root
    /// of 1 + u²(x² + x + 1)² − 2u(x² + 3x + 1) with constant term −1.
    fn s_closed(&self, n: u32) -> Result<MSeries, SeriesError> {
        let r = Ring::total(n);
        let (x, u) = (r.x(), r.u());
        let q = &x * &x + &x + 1;
        let radicand = 1 + &u * &u * &q * &q - 2 * &u * (&x * &x + 3 * &x + 1);
        let root = radicand.sqrt1()?;
        let base = -1 + &u + 3 * &u * &x + &u * &x * &x;
        let inner = if self.is(Mutation::SPrincipalBranch) {
            base - root
        } else {
            base + root
        };
        Ok(-(&x * inner) / (2 * (&u + 1) * (&x + 1)))
    }

    /// Σ c[b][m][n] x^(m+1) u^(n+b−m) (1+u)^(n−b−1) over the coefficients of
    /// t^b u^m x^n in C(t,u,x), to total degree `n`.
    fn s_substituted(&self, n: u32) -> Result<MSeries, SeriesError> {
        if n < 1 {
            return Ok(Ring::total(n).zero());
        }
        let c3 = self.named("C3", n - 1)?;
        self.s_from_c_table(&c3, n)
    }

    pub(crate) fn s_from_c_table(&self, c3: &MSeries, n: u32) -> Result<MSeries, SeriesError> {
        let mut terms = Vec::new();
        let shift = if self.is(Mutation::SMonomialExponent) {
            0
        } else {
            1
        };
        for (mono, c) in c3.terms() {
            let [len, b, m] = *mono;
            if m > len || b + 1 > len {
                return Err(SeriesError::Exponent(format!(
                    "t^{b} u^{m} x^{len} in C(t,u,x)"
                )));
            }
            let (ex, eu, e1u) = (m + 1, len + b - m, len - b - shift);
            let mut binom = BigInt::one();
            for j in 0..=e1u {
                if ex + eu + j > n {
                    break;
                }
                terms.push(([ex, 0, eu + j], c * Rational::from_integer(binom.clone())));
                binom = binom * BigInt::from(e1u - j) / BigInt::from(j + 1);
            }
        }
        Ok(MSeries::from_terms(terms, Grading::Total, n))
    }

    /// 2xf − x²(f + 1)
    pub(crate) fn f_plus(&self, f: &MSeries) -> MSeries {
        let x = Ring::x_graded(f.order()).x();
        let both = 2 * &x * f;
        if self.is(Mutation::FPlusOvercount) {
            return both;
        }
        both - &x * &x * (f + 1)
    }

    /// f²/(1 + f)
    pub(crate) fn f_minus(&self, f: &MSeries) -> Result<MSeries, SeriesError> {
        let denom = if self.is(Mutation::FMinusSign) {
            1 - f
        } else {
            1 + f
        };
        (f * f).try_div(&denom)
    }
}

/// Series from a refined table; statistic values become exponents of `vars`.
pub(crate) fn table_series(table: &RefinedCountTable, vars: &[Var], order: u32) -> MSeries {
    let terms = table.records().map(|(len, stats, count)| {
        let mut m = [len as u32, 0, 0];
        for (v, s) in vars.iter().zip(stats) {
            m[*v as usize] = *s as u32;
        }
        (m, Rational::from_integer(count.into()))
    });
    MSeries::from_terms(terms, Grading::XDegree, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &MSeries) -> Vec<String> {
        s.x_coefficient_strings()
    }

    #[test]
    fn schroder_families() {
        let lab = SeriesLab::new();
        assert_eq!(
            ints(&lab.named("large-schroder", 7).unwrap()),
            ["1", "1", "2", "6", "22", "90", "394", "1806"]
        );
        assert_eq!(
            ints(&lab.named("little-schroder", 5).unwrap()),
            ["1", "1", "3", "11", "45", "197"]
        );
        assert_eq!(
            lab.named("B-cubic-root", 12).unwrap(),
            lab.named("large-schroder", 12).unwrap()
        );
        assert_eq!(
            lab.named("t-kernel", 12).unwrap(),
            lab.named("little-schroder", 12).unwrap()
        );
        assert_eq!(
            ints(&lab.named("catalan", 5).unwrap()),
            ["1", "1", "2", "5", "14", "42"]
        );
    }

    #[test]
    fn c_star_low_terms() {
        let cs = SeriesLab::new().named("C-star", 6).unwrap();
        let r = |v: i64| Rational::from_integer(v.into());
        assert_eq!(cs.coeff([0, 0, 0]), r(1));
        assert_eq!(cs.coeff([1, 0, 0]), r(1));
        assert_eq!(cs.coeff([2, 1, 0]), r(1));
        assert_eq!(cs.coeff([2, 0, 0]), r(2));
    }

    #[test]
    fn s_lowest_term_and_f() {
        let lab = SeriesLab::new();
        let s = lab.named("s-closed", 8).unwrap();
        assert_eq!(s.valuation(), Some(4));
        assert_eq!(s.sorted_terms()[0].0, [2, 0, 2]);
        let f = lab.named("f", 7).unwrap();
        assert_eq!(
            ints(&(1 + f)),
            ["1", "1", "2", "6", "22", "90", "394", "1806"]
        );
    }

    #[test]
    fn hg_gives_c3_lowest_term() {
        let lab = SeriesLab::new();
        let c3 = lab.named("C3", 6).unwrap();
        assert_eq!(c3.sorted_terms()[0], ([2, 1, 1], Rational::one()));
    }

    #[test]
    fn a033321_from_y() {
        let lab = SeriesLab::new();
        let y1 = lab.named("Y-at-1", 12).unwrap();
        assert_eq!(y1, lab.named("a033321", 12).unwrap());
        assert_eq!(
            ints(&y1)[..9],
            ["1", "1", "2", "6", "21", "79", "311", "1265", "5275"]
        );
    }

    #[test]
    fn depth_limit() {
        let err = SeriesLab::new()
            .named("A1-enum", MAX_ENUMERATION_ORDER + 1)
            .unwrap_err();
        assert!(matches!(err, SeriesError::Depth { .. }));
        assert!(matches!(
            SeriesLab::new().named("nope", 3),
            Err(SeriesError::UnknownSeries(_))
        ));
    }
}

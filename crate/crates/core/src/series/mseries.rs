//! Truncated power series in x, t, u with exact rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, SeriesError};

/// Exponents of (x, t, u).
pub type Mono = [u32; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    T = 1,
    U = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::T, Var::U];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::T => "t",
            Var::U => "u",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// How the truncation bound is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Degree in x; coefficients are polynomials in t and u.
    XDegree,
    /// Total degree in all variables.
    Total,
}

impl Grading {
    pub fn grade(self, m: &Mono) -> u32 {
        match self {
            Grading::XDegree => m[0],
            Grading::Total => m[0] + m[1] + m[2],
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Grading::XDegree => "x-degree",
            Grading::Total => "total-degree",
        }
    }
}

/// A series known exactly through grade `order` (inclusive). Zero
/// coefficients are never stored.
#[derive(Clone)]
pub struct MSeries {
    vars: u8,
    grading: Grading,
    order: u32,
    terms: BTreeMap<Mono, Rational>,
}

impl PartialEq for MSeries {
    fn eq(&self, other: &Self) -> bool {
        self.grading == other.grading && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for MSeries {}

fn add_into(acc: &mut HashMap<Mono, Rational>, m: Mono, c: Rational) {
    match acc.get_mut(&m) {
        Some(v) => *v += c,
        None => {
            acc.insert(m, c);
        }
    }
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

impl MSeries {
    pub fn zero(grading: Grading, order: u32) -> Self {
        MSeries {
            vars: 0,
            grading,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, grading: Grading, order: u32) -> Self {
        Self::monomial(c, [0, 0, 0], grading, order)
    }

    pub fn int(c: i64, grading: Grading, order: u32) -> Self {
        Self::constant(Rational::from_integer(c.into()), grading, order)
    }

    pub fn var(v: Var, grading: Grading, order: u32) -> Self {
        let mut m = [0; 3];
        m[v as usize] = 1;
        let mut s = Self::monomial(Rational::one(), m, grading, order);
        s.vars |= v.bit();
        s
    }

    pub fn monomial(c: Rational, m: Mono, grading: Grading, order: u32) -> Self {
        Self::from_terms([(m, c)], grading, order)
    }

    /// Builds a series, dropping zero and out-of-range terms. Variables are
    /// those with a nonzero exponent somewhere.
    pub fn from_terms<I>(terms: I, grading: Grading, order: u32) -> Self
    where
        I: IntoIterator<Item = (Mono, Rational)>,
    {
        let mut map: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if grading.grade(&m) > order || c.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut s = MSeries {
            vars: 0,
            grading,
            order,
            terms: map,
        };
        s.vars = s.used_vars();
        s
    }

    /// Univariate series in x from integer coefficients.
    pub fn from_x_coefficients<T: Into<BigInt> + Clone>(coeffs: &[T], order: u32) -> Self {
        let mut s = Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ([i as u32, 0, 0], Rational::from_integer(c.clone().into()))),
            Grading::XDegree,
            order,
        );
        s.vars |= Var::X.bit();
        s
    }

    fn used_vars(&self) -> u8 {
        let mut v = 0;
        for m in self.terms.keys() {
            for var in Var::ALL {
                if m[var as usize] > 0 {
                    v |= var.bit();
                }
            }
        }
        v
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.vars & v.bit() != 0)
            .collect()
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.vars & v.bit() != 0
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients of x^0..x^order with t = u = 0 exponents.
    pub fn x_coefficients(&self) -> Vec<Rational> {
        (0..=self.order).map(|i| self.coeff([i, 0, 0])).collect()
    }

    /// Smallest grade carrying a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.grading.grade(m)).min()
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let g = self.grading;
        MSeries {
            vars: self.vars,
            grading: g,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| g.grade(m) <= order)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Same terms, larger declared order. Only sound for series known to be
    /// exact (polynomials).
    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        let g = self.grading;
        self.terms.retain(|m, _| g.grade(m) <= order);
        self
    }

    fn check(&self, other: &MSeries) -> Result<(), SeriesError> {
        if self.grading != other.grading {
            return Err(SeriesError::GradingMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MSeries) -> Result<MSeries, SeriesError> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        let g = self.grading;
        for (m, c) in &other.terms {
            if g.grade(m) > order {
                continue;
            }
            let entry = out.terms.entry(*m).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(m);
            }
        }
        out.vars |= other.vars;
        Ok(out)
    }

    pub fn try_sub(&self, other: &MSeries) -> Result<MSeries, SeriesError> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> MSeries {
        MSeries {
            vars: self.vars,
            grading: self.grading,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MSeries {
        if c.is_zero() {
            return MSeries {
                terms: BTreeMap::new(),
                ..self.clone()
            };
        }
        MSeries {
            vars: self.vars,
            grading: self.grading,
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Terms bucketed by grade, grades 0..=order.
    fn by_grade(&self, order: u32) -> Vec<Vec<(Mono, &Rational)>> {
        let mut parts = vec![Vec::new(); order as usize + 1];
        for (m, c) in &self.terms {
            let g = self.grading.grade(m);
            if g <= order {
                parts[g as usize].push((*m, c));
            }
        }
        parts
    }

    pub fn try_mul(&self, other: &MSeries) -> Result<MSeries, SeriesError> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let g = self.grading;
        let vars = self.vars | other.vars;
        // single-term operand: shift and scale
        for (a, b) in [(self, other), (other, self)] {
            if a.terms.len() == 1 {
                let (ma, ca) = a.terms.iter().next().unwrap();
                let terms = b
                    .terms
                    .iter()
                    .map(|(m, c)| (mono_add(ma, m), c * ca))
                    .filter(|(m, _)| g.grade(m) <= order)
                    .collect();
                return Ok(MSeries {
                    vars,
                    grading: g,
                    order,
                    terms,
                });
            }
        }
        let pa = self.by_grade(order);
        let pb = other.by_grade(order);
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        for (i, ta) in pa.iter().enumerate() {
            if ta.is_empty() {
                continue;
            }
            for tb in pb.iter().take(order as usize - i + 1) {
                for (ma, ca) in ta {
                    for (mb, cb) in tb {
                        add_into(&mut acc, mono_add(ma, mb), *ca * *cb);
                    }
                }
            }
        }
        let mut out = MSeries::from_terms(acc, g, order);
        out.vars |= vars;
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> MSeries {
        let mut result = MSeries::int(1, self.grading, self.order);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Multiplicative inverse; the grade-0 part must be a nonzero constant.
    pub fn reciprocal(&self) -> Result<MSeries, SeriesError> {
        let parts = self.by_grade(self.order);
        let c0 = match parts[0].as_slice() {
            [(m, c)] if *m == [0, 0, 0] => (*c).clone(),
            _ => {
                return Err(SeriesError::NotInvertible(
                    "grade-0 part is not a nonzero constant".to_string(),
                ))
            }
        };
        let inv0 = c0.recip();
        let mut r: Vec<Vec<(Mono, Rational)>> = vec![vec![([0, 0, 0], inv0.clone())]];
        for gdeg in 1..=self.order as usize {
            let mut acc: HashMap<Mono, Rational> = HashMap::new();
            for k in 1..=gdeg {
                for (ma, ca) in &parts[k] {
                    for (mb, cb) in &r[gdeg - k] {
                        add_into(&mut acc, mono_add(ma, mb), *ca * cb);
                    }
                }
            }
            let neg_inv = -&inv0;
            let part: Vec<(Mono, Rational)> = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, c * &neg_inv))
                .collect();
            r.push(part);
        }
        let mut out = MSeries::from_terms(r.into_iter().flatten(), self.grading, self.order);
        out.vars |= self.vars;
        Ok(out)
    }

    pub fn try_div(&self, other: &MSeries) -> Result<MSeries, SeriesError> {
        self.try_mul(&other.reciprocal()?)
    }

    /// Square root with constant term 1, by Newton iteration with doubling
    /// precision.
    pub fn sqrt1(&self) -> Result<MSeries, SeriesError> {
        let parts = self.by_grade(self.order);
        match parts[0].as_slice() {
            [(m, c)] if *m == [0, 0, 0] && c.is_one() => {}
            _ => {
                return Err(SeriesError::SqrtConstant(
                    "grade-0 part must equal 1".to_string(),
                ))
            }
        }
        let half = Rational::new(1.into(), 2.into());
        let mut r = MSeries::int(1, self.grading, 0);
        let mut p = 0;
        while p < self.order {
            p = (2 * p + 1).min(self.order);
            let rp = r.with_order(p);
            let q = self.truncate(p).try_mul(&rp.reciprocal()?)?;
            r = rp.try_add(&q)?.scale(&half);
        }
        r.vars |= self.vars;
        Ok(r)
    }

    /// Exact quotient by (1 − v) for a catalytic variable v.
    pub fn div_one_minus(&self, v: Var) -> Result<MSeries, SeriesError> {
        if self.grading == Grading::Total || v == Var::X {
            return Err(SeriesError::Unsupported(format!(
                "division by 1-{} needs an x-graded series and a catalytic variable",
                v.name()
            )));
        }
        let vi = v as usize;
        let mut groups: BTreeMap<Mono, BTreeMap<u32, &Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = *m;
            key[vi] = 0;
            groups.entry(key).or_default().insert(m[vi], c);
        }
        let mut terms = Vec::new();
        for (key, poly) in groups {
            let top = *poly.keys().next_back().unwrap();
            let mut acc = Rational::zero();
            for e in 0..=top {
                if let Some(c) = poly.get(&e) {
                    acc += *c;
                }
                if e < top {
                    let mut m = key;
                    m[vi] = e;
                    terms.push((m, acc.clone()));
                }
            }
            if !acc.is_zero() {
                return Err(SeriesError::NotDivisible(format!(
                    "coefficient of {} does not vanish at {} = 1",
                    fmt_mono(&key, 0b111),
                    v.name()
                )));
            }
        }
        let mut out = MSeries::from_terms(terms, self.grading, self.order);
        out.vars |= self.vars;
        Ok(out)
    }

    /// Exact quotient by x; the order drops by one.
    pub fn div_x(&self) -> Result<MSeries, SeriesError> {
        if self.terms.keys().any(|m| m[0] == 0) {
            return Err(SeriesError::NotDivisible(
                "terms free of x present".to_string(),
            ));
        }
        if self.order == 0 {
            return Err(SeriesError::Unsupported(
                "order 0 series cannot lose a degree".to_string(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| ([m[0] - 1, m[1], m[2]], c.clone()));
        let mut out = MSeries::from_terms(terms, self.grading, self.order - 1);
        out.vars |= self.vars;
        Ok(out)
    }

    /// Simultaneous substitution of series for variables.
    ///
    /// An x-graded host accepts x-graded images with the image of x of
    /// valuation at least 1. A total-degree host needs every one of its
    /// variables mapped to an image of valuation at least 1, unless the images
    /// are also total-degree and the variable passes through.
    pub fn substitute(&self, bindings: &[(Var, &MSeries)]) -> Result<MSeries, SeriesError> {
        let Some((_, first)) = bindings.first() else {
            return Ok(self.clone());
        };
        let target = first.grading;
        if bindings.iter().any(|(_, b)| b.grading != target) {
            return Err(SeriesError::GradingMismatch);
        }
        let image = |v: Var| bindings.iter().find(|(w, _)| *w == v).map(|(_, b)| *b);
        let mut order = self.order;
        for (_, b) in bindings {
            order = order.min(b.order);
        }
        match (self.grading, target) {
            (Grading::XDegree, Grading::Total) => {
                return Err(SeriesError::Unsupported(
                    "an x-graded host cannot be mapped into total-degree series".to_string(),
                ))
            }
            (Grading::XDegree, Grading::XDegree) => {
                if let Some(b) = image(Var::X) {
                    if b.valuation().is_some_and(|v| v < 1) {
                        return Err(SeriesError::Valuation(
                            "image of x has a constant part".to_string(),
                        ));
                    }
                }
            }
            (Grading::Total, _) => {
                for v in self.vars() {
                    match image(v) {
                        Some(b) if b.valuation().is_some_and(|val| val < 1) => {
                            return Err(SeriesError::Valuation(format!(
                                "image of {} has a constant part",
                                v.name()
                            )))
                        }
                        None if target == Grading::XDegree && v != Var::X => {
                            return Err(SeriesError::Valuation(format!(
                                "{} must be bound when leaving total-degree grading",
                                v.name()
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }

        // powers of each bound image, or of the variable itself when unbound
        let mut max_exp = [0u32; 3];
        for m in self.terms.keys() {
            for i in 0..3 {
                max_exp[i] = max_exp[i].max(m[i]);
            }
        }
        let mut powers: Vec<Vec<MSeries>> = Vec::with_capacity(3);
        for v in Var::ALL {
            let base = match image(v) {
                Some(b) => b.truncate(order),
                None => MSeries::var(v, target, order),
            };
            let mut ps = vec![MSeries::int(1, target, order)];
            for k in 1..=max_exp[v as usize] as usize {
                let next = &ps[k - 1] * &base;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        // group by (x, t) exponents so the x·t power product is reused
        let mut grouped: BTreeMap<[u32; 2], Vec<(u32, &Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            grouped.entry([m[0], m[1]]).or_default().push((m[2], c));
        }
        for ([ex, et], us) in grouped {
            let xt = &powers[0][ex as usize] * &powers[1][et as usize];
            if xt.is_zero() {
                continue;
            }
            for (eu, c) in us {
                let full = &xt * &powers[2][eu as usize];
                for (m, v) in full.terms {
                    add_into(&mut acc, m, v * c);
                }
            }
        }
        let mut out = MSeries::from_terms(acc, target, order);
        for v in Var::ALL {
            if image(v).is_none() && self.has_var(v) {
                out.vars |= v.bit();
            }
        }
        for (_, b) in bindings {
            out.vars |= b.vars;
        }
        Ok(out)
    }

    /// First monomial, in printout order, where the two series differ.
    pub fn first_difference(&self, other: &MSeries) -> Option<Mono> {
        let order = self.order.min(other.order);
        let diff = self.truncate(order).try_sub(&other.truncate(order)).ok()?;
        diff.sorted_terms().first().map(|(m, _)| *m)
    }

    /// Terms sorted by grade, then by exponents.
    pub fn sorted_terms(&self) -> Vec<(Mono, Rational)> {
        let mut v: Vec<(Mono, Rational)> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let g = self.grading;
        v.sort_by(|a, b| g.grade(&a.0).cmp(&g.grade(&b.0)).then(a.0.cmp(&b.0)));
        v
    }

    /// One line per monomial: `coeff * x^a t^b u^c`.
    pub fn to_lines(&self) -> Vec<String> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mono = fmt_mono(&m, self.vars);
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c} * {mono}")
                }
            })
            .collect()
    }

    pub fn is_univariate_x(&self) -> bool {
        self.grading == Grading::XDegree && self.vars & !Var::X.bit() == 0
    }

    pub fn to_json(&self) -> String {
        let wire = SeriesWire {
            variables: self.vars().iter().map(|v| v.name().to_string()).collect(),
            grading: self.grading.id().to_string(),
            order: self.order,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| TermWire {
                    x: m[0],
                    t: m[1],
                    u: m[2],
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&wire).expect("series serializes")
    }

    /// Coefficients rendered as strings, for integer-valued sequences.
    pub fn x_coefficient_strings(&self) -> Vec<String> {
        self.x_coefficients()
            .iter()
            .map(|c| c.to_string())
            .collect()
    }

    /// Whether every coefficient is a nonnegative integer.
    pub fn is_counting_series(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    variables: Vec<String>,
    grading: String,
    order: u32,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    x: u32,
    t: u32,
    u: u32,
    coeff: String,
}

fn fmt_mono(m: &Mono, vars: u8) -> String {
    Var::ALL
        .into_iter()
        .filter(|v| vars & v.bit() != 0 || m[*v as usize] > 0)
        .map(|v| format!("{}^{}", v.name(), m[v as usize]))
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Debug for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MSeries[{}, O({})] ", self.grading.id(), self.order + 1)?;
        f.debug_list().entries(self.to_lines()).finish()
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MSeries> for &MSeries {
            type Output = MSeries;
            fn $method(self, rhs: &MSeries) -> MSeries {
                self.$checked(rhs).expect("series operands share a grading")
            }
        }
        impl $trait<MSeries> for MSeries {
            type Output = MSeries;
            fn $method(self, rhs: MSeries) -> MSeries {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MSeries> for MSeries {
            type Output = MSeries;
            fn $method(self, rhs: &MSeries) -> MSeries {
                (&self).$method(rhs)
            }
        }
        impl $trait<MSeries> for &MSeries {
            type Output = MSeries;
            fn $method(self, rhs: MSeries) -> MSeries {
                self.$method(&rhs)
            }
        }
        impl $trait<i64> for &MSeries {
            type Output = MSeries;
            fn $method(self, rhs: i64) -> MSeries {
                self.$method(&MSeries::int(rhs, self.grading, self.order))
            }
        }
        impl $trait<i64> for MSeries {
            type Output = MSeries;
            fn $method(self, rhs: i64) -> MSeries {
                (&self).$method(rhs)
            }
        }
        impl $trait<&MSeries> for i64 {
            type Output = MSeries;
            fn $method(self, rhs: &MSeries) -> MSeries {
                MSeries::int(self, rhs.grading, rhs.order).$method(rhs)
            }
        }
        impl $trait<MSeries> for i64 {
            type Output = MSeries;
            fn $method(self, rhs: MSeries) -> MSeries {
                self.$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);
series_binop!(Div, div, try_div);

impl Neg for &MSeries {
    type Output = MSeries;
    fn neg(self) -> MSeries {
        self.neg_ref()
    }
}

impl Neg for MSeries {
    type Output = MSeries;
    fn neg(self) -> MSeries {
        self.neg_ref()
    }
}

/// Shorthand constructors sharing one grading and order.
#[derive(Clone, Copy, Debug)]
pub struct Ring {
    pub grading: Grading,
    pub order: u32,
}

impl Ring {
    pub fn x_graded(order: u32) -> Self {
        Ring {
            grading: Grading::XDegree,
            order,
        }
    }

    pub fn total(order: u32) -> Self {
        Ring {
            grading: Grading::Total,
            order,
        }
    }

    pub fn x(&self) -> MSeries {
        MSeries::var(Var::X, self.grading, self.order)
    }

    pub fn t(&self) -> MSeries {
        MSeries::var(Var::T, self.grading, self.order)
    }

    pub fn u(&self) -> MSeries {
        MSeries::var(Var::U, self.grading, self.order)
    }

    pub fn int(&self, c: i64) -> MSeries {
        MSeries::int(c, self.grading, self.order)
    }

    pub fn rat(&self, p: i64, q: i64) -> MSeries {
        MSeries::constant(Rational::new(p.into(), q.into()), self.grading, self.order)
    }

    pub fn zero(&self) -> MSeries {
        MSeries::zero(self.grading, self.order)
    }
}

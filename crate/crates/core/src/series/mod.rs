//! Exact truncated power series, the named series of the Schröder proofs, and
//! a registry of identities checked coefficient by coefficient.

mod fixed;
mod identity;
mod lab;
mod mseries;

use thiserror::Error;

use crate::class::ClassError;

pub use fixed::{fixed_point, Equation};
pub use identity::{
    identity_spec, IdentityCheck, IdentityKind, IdentitySpec, Mismatch, Status, IDENTITIES,
};
pub use lab::{Mutation, SeriesLab, MAX_ENUMERATION_ORDER, NAMED_SERIES};
pub use mseries::{Grading, MSeries, Mono, Ring, Var};

/// Always reduced, positive denominator.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operands use different gradings")]
    GradingMismatch,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("square root needs constant term 1: {0}")]
    SqrtConstant(String),
    #[error("substitution needs positive valuation: {0}")]
    Valuation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("fixed-point iteration for {equation} is not contracting at degree {degree}")]
    Divergence { equation: String, degree: u32 },
    #[error("unknown series {0:?}")]
    UnknownSeries(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown equation {0:?}")]
    UnknownEquation(String),
    #[error("{name} is enumeration-backed and limited to order {max}, requested {order}")]
    Depth { name: String, order: u32, max: u32 },
    #[error("exponent out of range: {0}")]
    Exponent(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// `named_series` on a default lab.
pub fn named_series(name: &str, order: u32) -> Result<MSeries, SeriesError> {
    SeriesLab::new().named(name, order)
}

/// `check_identity` on a default lab.
pub fn check_identity(id: &str, order: u32) -> Result<IdentityCheck, SeriesError> {
    SeriesLab::new().check(id, order)
}

/// `fixed_point_solve` on a default lab.
pub fn fixed_point_solve(equation: &str, order: u32) -> Result<Vec<MSeries>, SeriesError> {
    SeriesLab::new().solve(equation.parse()?, order)
}

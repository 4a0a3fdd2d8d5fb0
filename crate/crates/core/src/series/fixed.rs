//! Fixed-point solving for equations y = F(y) whose map raises the number of
//! correct leading coefficients.

use std::fmt;
use std::str::FromStr;

use super::{MSeries, SeriesError};

/// The registered equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equation {
    /// y = 1 + x y²
    Catalan,
    /// S = 1 + xS + xS², solution B = 1 + xS of the cubic's quadratic factor
    BCubicRoot,
    /// t = 1 + t²x + (t − 1)xC(x/(1 − tx))
    TKernel,
    /// the joint system for h and g over Av(132)
    Hg,
    /// f = x + f⊖ + f⊕ + s(x/(1 − x), f)
    F,
}

impl Equation {
    pub const ALL: [Equation; 5] = [
        Equation::Catalan,
        Equation::BCubicRoot,
        Equation::TKernel,
        Equation::Hg,
        Equation::F,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Equation::Catalan => "catalan",
            Equation::BCubicRoot => "B-cubic-root",
            Equation::TKernel => "t-kernel",
            Equation::Hg => "hg",
            Equation::F => "f",
        }
    }
}

impl FromStr for Equation {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Equation::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| SeriesError::UnknownEquation(s.to_string()))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// First grade at which any component differs, or `order + 1`.
fn first_difference(a: &[MSeries], b: &[MSeries], order: u32) -> u32 {
    a.iter()
        .zip(b)
        .filter_map(|(p, q)| p.first_difference(q).map(|m| p.grading().grade(&m)))
        .min()
        .unwrap_or(order + 1)
        .min(order + 1)
}

/// Iterates `y ← map(y, w)` with a working order `w` that grows by one each
/// time an iterate reproduces itself through degree `w`.
///
/// Between two growths the first differing degree must strictly increase;
/// otherwise the map is not contracting and the equation is reported.
pub fn fixed_point<F>(
    name: &str,
    order: u32,
    init: Vec<MSeries>,
    map: F,
) -> Result<Vec<MSeries>, SeriesError>
where
    F: Fn(&[MSeries], u32) -> Result<Vec<MSeries>, SeriesError>,
{
    let mut w = 0u32;
    let mut y: Vec<MSeries> = init.into_iter().map(|s| s.truncate(0)).collect();
    let mut last: i64 = -1;
    loop {
        let input: Vec<MSeries> = y.iter().map(|s| s.clone().with_order(w)).collect();
        let next: Vec<MSeries> = map(&input, w)?.into_iter().map(|s| s.truncate(w)).collect();
        let diff = first_difference(&next, &input, w);
        if diff == w + 1 {
            if w >= order {
                return Ok(next);
            }
            w += 1;
            last = w as i64 - 1;
        } else if (diff as i64) <= last {
            return Err(SeriesError::Divergence {
                equation: name.to_string(),
                degree: diff,
            });
        } else {
            last = diff as i64;
        }
        y = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Ring;

    #[test]
    fn catalan_by_iteration() {
        let sol = fixed_point("catalan", 8, vec![Ring::x_graded(0).int(1)], |y, w| {
            let x = Ring::x_graded(w).x();
            Ok(vec![1 + &x * &y[0] * &y[0]])
        })
        .unwrap();
        let c: Vec<String> = sol[0].x_coefficient_strings();
        assert_eq!(c, ["1", "1", "2", "5", "14", "42", "132", "429", "1430"]);
    }

    #[test]
    fn non_contracting_map_is_reported() {
        let err = fixed_point("y = 1 + y^2", 5, vec![Ring::x_graded(0).int(1)], |y, _| {
            Ok(vec![1 + &y[0] * &y[0]])
        })
        .unwrap_err();
        assert!(
            matches!(err, SeriesError::Divergence { ref equation, .. } if equation == "y = 1 + y^2")
        );
    }
}

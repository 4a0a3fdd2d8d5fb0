use num::{BigInt, One};
use permlab_core::series::{Grading, MSeries, Rational};
use proptest::prelude::*;

const ORDER: u32 = 5;

fn series(grading: Grading, constant: Option<i64>) -> impl Strategy<Value = MSeries> {
    prop::collection::vec(((0u32..=3, 0u32..=2, 0u32..=2), -6i64..=6, 1i64..=3), 0..8).prop_map(
        move |terms| {
            let mut terms: Vec<([u32; 3], Rational)> = terms
                .into_iter()
                .filter(|((x, t, u), _, _)| constant.is_none() || grading.grade(&[*x, *t, *u]) > 0)
                .map(|((x, t, u), p, q)| {
                    ([x, t, u], Rational::new(BigInt::from(p), BigInt::from(q)))
                })
                .collect();
            if let Some(c) = constant {
                terms.push(([0, 0, 0], Rational::from_integer(c.into())));
            }
            MSeries::from_terms(terms, grading, ORDER)
        },
    )
}

fn any_series() -> impl Strategy<Value = MSeries> {
    series(Grading::Total, None)
}

fn one() -> MSeries {
    MSeries::constant(Rational::one(), Grading::Total, ORDER)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes_and_associates(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_commutes_associates_and_distributes(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reciprocal_inverts(a in series(Grading::Total, Some(3))) {
        let r = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &r, one());
    }

    #[test]
    fn reciprocal_inverts_x_graded(a in series(Grading::XDegree, Some(-2))) {
        let r = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &r, MSeries::constant(Rational::one(), Grading::XDegree, ORDER));
    }

    #[test]
    fn sqrt1_squares_back(a in series(Grading::Total, Some(1))) {
        let r = a.sqrt1().unwrap();
        prop_assert_eq!(r.coeff([0, 0, 0]), Rational::one());
        prop_assert_eq!(&r * &r, a);
    }

    #[test]
    fn truncation_commutes_with_products(a in any_series(), b in any_series(), k in 0u32..=ORDER) {
        prop_assert_eq!((&a * &b).truncate(k), &a.truncate(k) * &b.truncate(k));
    }
}

//! Randomized invariants for the geometric predicates: distance symmetry,
//! compatibility of apartness with the neighbour relation, and order
//! robustness under infinitesimal displacement.

use proptest::prelude::*;
use sdg_core::geometry::{apart, dist, neighbour, Point};
use sdg_core::nilpotent::{BatchTable, NilElement};
use sdg_core::scalar::{Scalar, Sign};

fn rational_point() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-100i64..=100, 1i64..=100), 2..=3)
}

fn to_point(coords: &[(i64, i64)]) -> Point {
    Point::new(
        coords
            .iter()
            .map(|&(n, d)| NilElement::from_ratio(n, d))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_is_symmetric(a in rational_point(), b in rational_point()) {
        prop_assume!(a.len() == b.len());
        let (x, y) = (to_point(&a), to_point(&b));
        prop_assume!(apart(&x, &y));
        prop_assert_eq!(dist(&x, &y).unwrap(), dist(&y, &x).unwrap());
    }

    #[test]
    fn apartness_passes_to_neighbours(a in rational_point(), b in rational_point()) {
        prop_assume!(a.len() == b.len());
        let (x, y) = (to_point(&a), to_point(&b));
        prop_assume!(apart(&x, &y));
        // wobble y by a generic monad element: apartness must survive,
        // and x can never be both apart from and a neighbour of y'
        let mut table = BatchTable::new();
        let (_, d) = table.fresh_batch(a.len());
        let wobbled = y.add(&Point::new(d));
        prop_assert!(neighbour(&y, &wobbled));
        prop_assert!(apart(&x, &wobbled));
        prop_assert!(!neighbour(&x, &wobbled));
    }

    #[test]
    fn infinitesimals_do_not_tip_strict_order(n1 in -100i64..=100, d1 in 1i64..=100,
                                              gap_n in 1i64..=50, gap_d in 1i64..=50) {
        // x < y strictly; then x + ε < y still, in the pure order
        let x = Scalar::from_ratio(n1, d1);
        let y = &x + Scalar::from_ratio(gap_n, gap_d);
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let shifted = NilElement::from_scalar(x) + &eps[0];
        let diff = NilElement::from_scalar(y) - shifted;
        prop_assert_eq!(diff.pure_sign(), Sign::Positive);
    }
}

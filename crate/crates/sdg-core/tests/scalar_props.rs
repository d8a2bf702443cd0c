//! Property tests for the exact scalar field: the field laws hold exactly on
//! randomized expression trees, sign is stable under re-bracketing, and the
//! square root round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdg_core::scalar::{Scalar, Sign};

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

/// Small surd-bearing scalars: q0 + q1·√p for a few fixed positive radicands.
fn surd() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), prop::sample::select(vec![2i64, 3, 5, 7]))
        .prop_map(|(a, b, p)| a + b * Scalar::from_int(p).sqrt().unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![rational(), surd()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes_and_associates(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(((&a + &b) - (&b + &a)).is_zero());
        prop_assert!((((&a + &b) + &c) - (&a + (&b + &c))).is_zero());
    }

    #[test]
    fn multiplication_commutes_and_associates(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(((&a * &b) - (&b * &a)).is_zero());
        prop_assert!((((&a * &b) * &c) - (&a * (&b * &c))).is_zero());
    }

    #[test]
    fn distributivity(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(((&a * (&b + &c)) - (&a * &b + &a * &c)).is_zero());
    }

    #[test]
    fn additive_cancellation(a in scalar(), b in scalar()) {
        prop_assert!((((&a + &b) - &b) - &a).is_zero());
        prop_assert_eq!((&a + &b) - &b, a);
    }

    #[test]
    fn multiplicative_inverse(a in scalar()) {
        if !a.is_zero() {
            let inv = a.recip().unwrap();
            prop_assert!((&a * &inv - Scalar::one()).is_zero());
        }
    }

    #[test]
    fn trichotomy_and_rebracketing(a in scalar(), b in scalar(), c in scalar()) {
        // exactly one sign holds
        let v = &a + &b - &c;
        let signs = [Sign::Negative, Sign::Zero, Sign::Positive];
        let hits = signs.iter().filter(|&&s| v.sign() == s).count();
        prop_assert_eq!(hits, 1);
        // the same value built with different bracketing has the same sign
        let w = (&a - &c) + &b;
        prop_assert_eq!(v.sign(), w.sign());
    }
}

#[test]
fn sqrt_round_trips_on_rationals_and_nested_surds() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260808);
    for trial in 0..200 {
        let n = rng.random_range(1i64..=10_000);
        let d = rng.random_range(1i64..=1_000);
        let mut x = Scalar::from_ratio(n, d);
        // every third trial nests: x ← x + √x before the final root
        if trial % 3 == 0 {
            let inner = x.sqrt().expect("positive");
            x = x + inner;
        }
        let root = x.sqrt().expect("positive");
        assert_eq!(root.sign(), Sign::Positive);
        assert!((&root * &root - &x).is_zero(), "trial {trial}: (√x)² ≠ x");
    }
}

#[test]
fn sign_is_exact_on_engineered_near_zeros() {
    // values crafted to defeat interval arithmetic and force exact fallback
    let r2 = Scalar::from_int(2).sqrt().unwrap();
    let r8 = Scalar::from_int(8).sqrt().unwrap();
    let tiny = Scalar::from_ratio(1, 1_000_000_000);
    let exactly_zero = &r8 - Scalar::from_int(2) * &r2;
    assert_eq!(exactly_zero.sign(), Sign::Zero);
    assert_eq!((&exactly_zero + &tiny).sign(), Sign::Positive);
    assert_eq!((&exactly_zero - &tiny).sign(), Sign::Negative);

    // √2·√3 - √6 = 0 across merged towers
    let r3 = Scalar::from_int(3).sqrt().unwrap();
    let r6 = Scalar::from_int(6).sqrt().unwrap();
    assert_eq!((&r2 * &r3 - &r6).sign(), Sign::Zero);

    // (√2 + √3)² - 5 - 2√6 = 0
    let s = &r2 + &r3;
    let expr = &s * &s - Scalar::from_int(5) - Scalar::from_int(2) * &r6;
    assert_eq!(expr.sign(), Sign::Zero);
}

#[test]
fn rationals_embed_exactly() {
    let q = BigRational::new(BigInt::from(355), BigInt::from(113));
    let s = Scalar::from_big_rational(q.clone());
    assert_eq!(s.to_big_rational(), Some(q));
}

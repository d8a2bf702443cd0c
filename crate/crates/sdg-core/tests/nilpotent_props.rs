//! Ring laws, oracle equivalence and cancellation soundness for the
//! nilpotent algebra.
//!
//! The oracle multiplies naively as multivariate polynomials with exponents
//! and only afterwards reduces modulo the relations (any square, or any two
//! generators sharing a batch, kills the monomial). It shares no code with
//! the algebra's own multiplication.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdg_core::nilpotent::{BatchTable, GenId, NilElement};
use sdg_core::scalar::Scalar;

/// Naive polynomial with explicit exponents, reduced only on demand.
mod oracle {
    use super::*;

    pub type Expo = BTreeMap<GenId, u32>;

    #[derive(Clone, Default)]
    pub struct Poly(pub BTreeMap<Expo, Scalar>);

    impl Poly {
        pub fn term(gens: &[GenId], coeff: Scalar) -> Poly {
            let mut expo = Expo::new();
            for g in gens {
                *expo.entry(*g).or_insert(0) += 1;
            }
            let mut map = BTreeMap::new();
            map.insert(expo, coeff);
            Poly(map)
        }

        pub fn add(&self, other: &Poly) -> Poly {
            let mut out = self.0.clone();
            for (e, c) in &other.0 {
                let entry = out.entry(e.clone()).or_insert_with(Scalar::zero);
                *entry = &*entry + c;
            }
            Poly(out)
        }

        pub fn mul(&self, other: &Poly) -> Poly {
            let mut out: BTreeMap<Expo, Scalar> = BTreeMap::new();
            for (ea, ca) in &self.0 {
                for (eb, cb) in &other.0 {
                    let mut e = ea.clone();
                    for (g, k) in eb {
                        *e.entry(*g).or_insert(0) += k;
                    }
                    let entry = out.entry(e).or_insert_with(Scalar::zero);
                    *entry = &*entry + &(ca * cb);
                }
            }
            Poly(out)
        }

        /// Reduce modulo the ideal: drop monomials with a squared generator
        /// or two generators from one batch; drop zero coefficients.
        pub fn reduce(&self) -> BTreeMap<Vec<GenId>, Scalar> {
            let mut out: BTreeMap<Vec<GenId>, Scalar> = BTreeMap::new();
            'term: for (expo, coeff) in &self.0 {
                let mut gens: Vec<GenId> = Vec::new();
                let mut batches: Vec<u32> = Vec::new();
                for (g, k) in expo {
                    if *k >= 2 || batches.contains(&g.batch) {
                        continue 'term;
                    }
                    batches.push(g.batch);
                    gens.push(*g);
                }
                let entry = out.entry(gens).or_insert_with(Scalar::zero);
                *entry = &*entry + coeff;
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }
}

/// One shared shape: batch 0 of size 2, batch 1 of size 2 (four generators).
fn four_generators() -> (BatchTable, Vec<NilElement>, Vec<GenId>) {
    let mut table = BatchTable::new();
    let (_, a) = table.fresh_batch(2);
    let (_, b) = table.fresh_batch(2);
    let gens = vec![a[0].clone(), a[1].clone(), b[0].clone(), b[1].clone()];
    let ids = vec![
        GenId { batch: 0, index: 0 },
        GenId { batch: 0, index: 1 },
        GenId { batch: 1, index: 0 },
        GenId { batch: 1, index: 1 },
    ];
    (table, gens, ids)
}

/// The 9 admissible monomials over two batches of two generators.
fn monomial_pool() -> Vec<Vec<usize>> {
    vec![
        vec![],
        vec![0],
        vec![1],
        vec![2],
        vec![3],
        vec![0, 2],
        vec![0, 3],
        vec![1, 2],
        vec![1, 3],
    ]
}

fn build_element(
    gens: &[NilElement],
    ids: &[GenId],
    terms: &[(Vec<usize>, Scalar)],
) -> (NilElement, oracle::Poly) {
    let mut elem = NilElement::zero();
    let mut poly = oracle::Poly::default();
    for (mono, coeff) in terms {
        let mut product = NilElement::from_scalar(coeff.clone());
        for &g in mono {
            product = &product * &gens[g];
        }
        elem = &elem + &product;
        let id_list: Vec<GenId> = mono.iter().map(|&g| ids[g]).collect();
        poly = poly.add(&oracle::Poly::term(&id_list, coeff.clone()));
    }
    (elem, poly)
}

fn assert_matches_oracle(elem: &NilElement, poly: &oracle::Poly) {
    let got: BTreeMap<Vec<GenId>, Scalar> = elem.terms().into_iter().collect();
    let want = poly.reduce();
    assert_eq!(got.len(), want.len(), "term counts differ");
    for (mono, coeff) in &want {
        let g = got.get(mono).unwrap_or_else(|| panic!("missing {mono:?}"));
        assert!((g - coeff).is_zero(), "coefficient mismatch at {mono:?}");
    }
}

fn term_strategy() -> impl Strategy<Value = Vec<(Vec<usize>, Scalar)>> {
    let pool = monomial_pool();
    prop::collection::vec(
        (0..pool.len(), -9i64..=9, 1i64..=4).prop_map(move |(i, n, d)| {
            (pool[i].clone(), Scalar::from_ratio(n, d))
        }),
        0..=4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(xt in term_strategy(), yt in term_strategy(), zt in term_strategy()) {
        let (_, gens, ids) = four_generators();
        let (x, _) = build_element(&gens, &ids, &xt);
        let (y, _) = build_element(&gens, &ids, &yt);
        let (z, _) = build_element(&gens, &ids, &zt);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
        prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        prop_assert!(((&x + &y) - &y - &x).is_zero());
    }

    #[test]
    fn products_match_the_oracle(xt in term_strategy(), yt in term_strategy()) {
        let (_, gens, ids) = four_generators();
        let (x, px) = build_element(&gens, &ids, &xt);
        let (y, py) = build_element(&gens, &ids, &yt);
        assert_matches_oracle(&(&x * &y), &px.mul(&py));
        assert_matches_oracle(&(&x + &y), &px.add(&py));
    }
}

#[test]
fn inverse_and_sqrt_round_trip_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pool = monomial_pool();
    for trial in 0..200 {
        let (_, gens, ids) = four_generators();
        let mut terms: Vec<(Vec<usize>, Scalar)> = (0..rng.random_range(0..=4))
            .map(|_| {
                let mono = pool[rng.random_range(1..pool.len())].clone();
                let coeff =
                    Scalar::from_ratio(rng.random_range(-9..=9i64), rng.random_range(1..=4i64));
                (mono, coeff)
            })
            .collect();
        // strictly positive pure part so both inverse and sqrt are defined
        terms.push((vec![], Scalar::from_ratio(rng.random_range(1..=100i64), 1)));
        let (x, _) = build_element(&gens, &ids, &terms);

        let inv = x.inverse().expect("invertible");
        assert_eq!(&x * &inv, NilElement::one(), "trial {trial}: x·x⁻¹ ≠ 1");

        let root = x.sqrt().expect("positive pure part");
        assert_eq!(&root * &root, x, "trial {trial}: (√x)² ≠ x");
    }
}

#[test]
fn cancellation_is_sound_for_fresh_batches() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = monomial_pool();
    for _ in 0..100 {
        let (mut table, gens, ids) = four_generators();
        let terms: Vec<(Vec<usize>, Scalar)> = (0..rng.random_range(0..=3))
            .map(|_| {
                let mono = pool[rng.random_range(0..pool.len())].clone();
                let coeff =
                    Scalar::from_ratio(rng.random_range(-9..=9i64), rng.random_range(1..=4i64));
                (mono, coeff)
            })
            .collect();
        let (x, _) = build_element(&gens, &ids, &terms);
        let (fresh, d) = table.fresh_batch(1);
        let product = &x * &d[0];
        let dec = table.kl_cancel(&product, fresh).unwrap();
        assert!(dec.constant.is_zero());
        assert_eq!(dec.coefficients.len(), 1);
        assert_eq!(dec.coefficients[0], x);
        assert_eq!(product.is_zero(), x.is_zero());
    }
}

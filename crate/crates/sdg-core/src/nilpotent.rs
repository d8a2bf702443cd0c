//! The nilpotent-extended number line.
//!
//! A [`NilElement`] is a finite scalar-linear combination of square-free
//! monomials in infinitesimal generators. Generators come in *batches*: any
//! product of two generators from the same batch (including a generator with
//! itself) is zero, while products across batches survive. A batch of size
//! `n` therefore behaves as one generic first-order infinitesimal `n`-vector,
//! and universally quantified statements about such vectors are decided by
//! evaluating at a fresh batch and extracting linear coefficients
//! ([`BatchTable::kl_cancel`]).
//!
//! Each verification scenario owns one [`BatchTable`]; elements created from
//! different tables never mix (attempting to combine them panics, since it is
//! a programming error rather than a data condition). Pure scalar constants
//! carry no context and combine with anything.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Sign};

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// Identity of one algebra context (one `BatchTable`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextId(u64);

/// Identifies a batch within its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BatchId(pub u32);

/// One infinitesimal generator: `index`-th member of `batch`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenId {
    pub batch: u32,
    pub index: u32,
}

/// A square-free monomial: sorted generators, at most one per batch.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
struct Monomial(Vec<GenId>);

impl Monomial {
    fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    fn single(g: GenId) -> Monomial {
        Monomial(vec![g])
    }

    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of two monomials; `None` when a batch relation kills it.
    fn mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            if a.batch == b.batch {
                return None;
            }
            if a < b {
                out.push(a);
                i += 1;
            } else {
                out.push(b);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some(Monomial(out))
    }

    fn contains(&self, g: GenId) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    fn batch_member(&self, batch: BatchId) -> Option<GenId> {
        self.0.iter().copied().find(|g| g.batch == batch.0)
    }

    fn without(&self, g: GenId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|x| *x != g).collect())
    }
}

/// Registry of generator batches for one verification scenario.
///
/// Creating or extending a table requires `&mut`; the elements it produces
/// are immutable values and may be shared freely afterwards.
#[derive(Debug)]
pub struct BatchTable {
    ctx: ContextId,
    sizes: Vec<u32>,
    names: Vec<Option<String>>,
}

impl BatchTable {
    pub fn new() -> BatchTable {
        BatchTable {
            ctx: ContextId(NEXT_CONTEXT.fetch_add(1, AtomicOrdering::Relaxed)),
            sizes: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn context(&self) -> ContextId {
        self.ctx
    }

    pub fn batch_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn batch_size(&self, batch: BatchId) -> Result<u32> {
        self.sizes
            .get(batch.0 as usize)
            .copied()
            .ok_or(Error::UnknownBatch(batch.0))
    }

    pub fn batch_name(&self, batch: BatchId) -> Option<&str> {
        self.names.get(batch.0 as usize)?.as_deref()
    }

    /// Allocate a new batch of `size` generators, pairwise annihilating.
    /// Returns the generators as elements; IDs are never reused.
    pub fn fresh_batch(&mut self, size: usize) -> (BatchId, Vec<NilElement>) {
        self.fresh_batch_named(size, None)
    }

    pub fn fresh_batch_named(
        &mut self,
        size: usize,
        name: Option<&str>,
    ) -> (BatchId, Vec<NilElement>) {
        let id = BatchId(self.sizes.len() as u32);
        self.sizes.push(size as u32);
        self.names.push(name.map(str::to_owned));
        let gens = (0..size as u32)
            .map(|index| {
                NilElement::from_terms(
                    Some(self.ctx),
                    [(
                        Monomial::single(GenId {
                            batch: id.0,
                            index,
                        }),
                        Scalar::one(),
                    )],
                )
            })
            .collect();
        (id, gens)
    }

    /// Decompose `x` with respect to one batch: `x = c₀ + Σ cᵢ·dᵢ` where the
    /// `dᵢ` are the batch generators and no `cᵢ` mentions the batch. Since a
    /// monomial holds at most one generator per batch, the decomposition is
    /// complete. The cancellation step for a universally quantified batch
    /// vector reads: `x = 0` for generic `d` iff `c₀` and every `cᵢ` vanish.
    pub fn kl_cancel(&self, x: &NilElement, batch: BatchId) -> Result<KlDecomposition> {
        let size = self.batch_size(batch)?;
        if let Some(ctx) = x.ctx {
            if ctx != self.ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let mut constant = NilElement::scalar_in(x.ctx, Scalar::zero());
        let mut coefficients = vec![NilElement::scalar_in(x.ctx, Scalar::zero()); size as usize];
        for (mono, coeff) in &x.terms {
            match mono.batch_member(batch) {
                None => constant.insert_term(mono.clone(), coeff.clone()),
                Some(g) => {
                    coefficients[g.index as usize].insert_term(mono.without(g), coeff.clone())
                }
            }
        }
        Ok(KlDecomposition {
            constant,
            coefficients,
        })
    }
}

impl Default for BatchTable {
    fn default() -> Self {
        BatchTable::new()
    }
}

/// Result of [`BatchTable::kl_cancel`].
#[derive(Debug, Clone)]
pub struct KlDecomposition {
    /// Terms free of the batch (may still involve other batches).
    pub constant: NilElement,
    /// Coefficient of each batch generator, in index order.
    pub coefficients: Vec<NilElement>,
}

impl KlDecomposition {
    /// Whether `x = 0` holds for a generic batch vector.
    pub fn vanishes_generically(&self) -> bool {
        self.constant.is_zero() && self.coefficients.iter().all(NilElement::is_zero)
    }

    /// Whether the linear part alone vanishes.
    pub fn linear_part_vanishes(&self) -> bool {
        self.coefficients.iter().all(NilElement::is_zero)
    }
}

impl PartialEq for KlDecomposition {
    fn eq(&self, other: &Self) -> bool {
        self.constant == other.constant && self.coefficients == other.coefficients
    }
}

/// An element of the nilpotent-extended line.
#[derive(Clone)]
pub struct NilElement {
    ctx: Option<ContextId>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NilElement {
    fn from_terms<I>(ctx: Option<ContextId>, terms: I) -> NilElement
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut out = NilElement {
            ctx,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            out.insert_term(m, c);
        }
        out
    }

    fn scalar_in(ctx: Option<ContextId>, s: Scalar) -> NilElement {
        NilElement::from_terms(ctx, [(Monomial::unit(), s)])
    }

    fn insert_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn zero() -> NilElement {
        NilElement::scalar_in(None, Scalar::zero())
    }

    pub fn one() -> NilElement {
        NilElement::scalar_in(None, Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> NilElement {
        NilElement::scalar_in(None, s)
    }

    pub fn from_int(n: i64) -> NilElement {
        NilElement::from_scalar(Scalar::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> NilElement {
        NilElement::from_scalar(Scalar::from_ratio(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn pure_part(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn nilpotent_part(&self) -> NilElement {
        NilElement::from_terms(
            self.ctx,
            self.terms
                .iter()
                .filter(|(m, _)| !m.is_unit())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Sign of the pure part; this is the order structure of the extended
    /// line (nilpotents do not influence order).
    pub fn pure_sign(&self) -> Sign {
        self.pure_part().sign()
    }

    /// Invertible iff the pure part is nonzero (the algebra is local).
    pub fn is_invertible(&self) -> bool {
        !self.pure_sign().is_zero()
    }

    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(Monomial::is_unit)
    }

    /// Whether any generator appears. Pure elements mix with any context.
    pub fn mentions_generators(&self) -> bool {
        !self.is_pure()
    }

    fn unified_ctx(&self, other: &NilElement) -> Option<ContextId> {
        match (self.ctx, other.ctx) {
            (Some(a), Some(b)) => {
                assert!(
                    a == b,
                    "mixed NilElements from different algebra contexts"
                );
                Some(a)
            }
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }

    fn add_impl(&self, other: &NilElement) -> NilElement {
        let ctx = self.unified_ctx(other);
        let mut out = NilElement {
            ctx,
            terms: self.terms.clone(),
        };
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_impl(&self, other: &NilElement) -> NilElement {
        let ctx = self.unified_ctx(other);
        let mut out = NilElement {
            ctx,
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.mul(mb) {
                    out.insert_term(m, ca * cb);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> NilElement {
        NilElement::from_terms(
            self.ctx,
            self.terms.iter().map(|(m, c)| (m.clone(), c * s)),
        )
    }

    /// Exact inverse: `p⁻¹·Σ (-n/p)^k` over the nilpotency order, where `p`
    /// is the pure part and `n` the nilpotent part.
    pub fn inverse(&self) -> Result<NilElement> {
        let p = self.pure_part();
        if p.sign().is_zero() {
            return Err(Error::NotInvertible);
        }
        let p_inv = p.recip().expect("pure part checked nonzero");
        let n = self.nilpotent_part();
        // t = -n/p
        let t = n.scale(&-&p_inv);
        let mut acc = NilElement::scalar_in(self.ctx, Scalar::one());
        let mut power = NilElement::scalar_in(self.ctx, Scalar::one());
        loop {
            power = power.mul_impl(&t);
            if power.is_zero() {
                break;
            }
            acc = acc.add_impl(&power);
        }
        Ok(acc.scale(&p_inv))
    }

    /// Exact square root with positive pure part, by the truncated binomial
    /// series `√p·Σ C(1/2,k)·(n/p)^k`; truncation is exact because the
    /// nilpotent part is nilpotent.
    pub fn sqrt(&self) -> Result<NilElement> {
        let p = self.pure_part();
        if p.sign() != Sign::Positive {
            return Err(Error::PurePartNotPositive);
        }
        let sqrt_p = p.sqrt()?;
        let t = self
            .nilpotent_part()
            .scale(&p.recip().expect("positive pure part"));
        // binomial coefficients C(1/2, k), exactly
        let mut acc = NilElement::scalar_in(self.ctx, Scalar::one());
        let mut power = NilElement::scalar_in(self.ctx, Scalar::one());
        let mut binom = Scalar::one();
        let mut k: i64 = 0;
        loop {
            power = power.mul_impl(&t);
            if power.is_zero() {
                break;
            }
            // C(1/2, k+1) = C(1/2, k) · (1/2 - k) / (k + 1)
            binom = binom * Scalar::from_ratio(1 - 2 * k, 2 * (k + 1));
            k += 1;
            acc = acc.add_impl(&power.scale(&binom));
        }
        let root = acc.scale(&sqrt_p);
        debug_assert!(root.mul_impl(&root).add_impl(&self.neg_impl()).is_zero());
        Ok(root)
    }

    fn neg_impl(&self) -> NilElement {
        NilElement::from_terms(
            self.ctx,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)),
        )
    }

    /// Canonical terms: (sorted generators of the monomial, coefficient).
    pub fn terms(&self) -> Vec<(Vec<GenId>, Scalar)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.0.clone(), c.clone()))
            .collect()
    }

    /// The generators mentioned by this element.
    pub fn support(&self) -> Vec<GenId> {
        let mut out: Vec<GenId> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().copied())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Coefficient of a single generator's linear term.
    pub fn linear_coefficient(&self, g: GenId) -> NilElement {
        NilElement::from_terms(
            self.ctx,
            self.terms
                .iter()
                .filter(|(m, _)| m.contains(g))
                .map(|(m, c)| (m.without(g), c.clone())),
        )
    }
}

impl From<Scalar> for NilElement {
    fn from(s: Scalar) -> NilElement {
        NilElement::from_scalar(s)
    }
}

impl PartialEq for NilElement {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms.iter().zip(other.terms.iter()).all(
            |((ma, ca), (mb, cb))| ma == mb && ca == cb,
        )
    }
}

impl Eq for NilElement {}

macro_rules! nil_binop {
    ($trait:ident, $method:ident, $impl_method:ident) => {
        impl std::ops::$trait<&NilElement> for &NilElement {
            type Output = NilElement;
            fn $method(self, rhs: &NilElement) -> NilElement {
                self.$impl_method(rhs)
            }
        }
        impl std::ops::$trait<NilElement> for NilElement {
            type Output = NilElement;
            fn $method(self, rhs: NilElement) -> NilElement {
                self.$impl_method(&rhs)
            }
        }
        impl std::ops::$trait<&NilElement> for NilElement {
            type Output = NilElement;
            fn $method(self, rhs: &NilElement) -> NilElement {
                self.$impl_method(rhs)
            }
        }
        impl std::ops::$trait<NilElement> for &NilElement {
            type Output = NilElement;
            fn $method(self, rhs: NilElement) -> NilElement {
                self.$impl_method(&rhs)
            }
        }
    };
}

nil_binop!(Add, add, add_impl);
nil_binop!(Mul, mul, mul_impl);

impl std::ops::Sub<&NilElement> for &NilElement {
    type Output = NilElement;
    fn sub(self, rhs: &NilElement) -> NilElement {
        self.add_impl(&rhs.neg_impl())
    }
}

impl std::ops::Sub<NilElement> for NilElement {
    type Output = NilElement;
    fn sub(self, rhs: NilElement) -> NilElement {
        &self - &rhs
    }
}

impl std::ops::Sub<&NilElement> for NilElement {
    type Output = NilElement;
    fn sub(self, rhs: &NilElement) -> NilElement {
        &self - rhs
    }
}

impl std::ops::Sub<NilElement> for &NilElement {
    type Output = NilElement;
    fn sub(self, rhs: NilElement) -> NilElement {
        self - &rhs
    }
}

impl std::ops::Neg for &NilElement {
    type Output = NilElement;
    fn neg(self) -> NilElement {
        self.neg_impl()
    }
}

impl std::ops::Neg for NilElement {
    type Output = NilElement;
    fn neg(self) -> NilElement {
        self.neg_impl()
    }
}

impl fmt::Display for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if mono.is_unit() {
                write!(f, "{coeff}")?;
                continue;
            }
            write!(f, "({coeff})")?;
            for g in &mono.0 {
                write!(f, "·g{}_{}", g.batch, g.index)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> NilElement {
        NilElement::from_int(n)
    }

    #[test]
    fn generator_squares_to_zero() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let e = &eps[0];
        assert!((e * e).is_zero());
        assert!(!e.is_zero());
    }

    #[test]
    fn same_batch_products_vanish() {
        let mut table = BatchTable::new();
        let (_, d) = table.fresh_batch(2);
        assert!((&d[0] * &d[1]).is_zero());
        assert!((&d[0] * &d[0]).is_zero());
        assert!((&d[1] * &d[1]).is_zero());
    }

    #[test]
    fn cross_batch_products_survive() {
        let mut table = BatchTable::new();
        let (_, e1) = table.fresh_batch(1);
        let (_, e2) = table.fresh_batch(1);
        let sum = &e1[0] + &e2[0];
        let sq = &sum * &sum;
        // (ε₁+ε₂)² = 2·ε₁·ε₂ for generators in distinct batches
        assert_eq!(sq, (&e1[0] * &e2[0]).scale(&Scalar::from_int(2)));
        assert!(!sq.is_zero());
    }

    #[test]
    fn inverse_of_two_plus_eps() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let x = int(2) + &eps[0];
        let inv = x.inverse().unwrap();
        // 1/(2+ε) = 1/2 - ε/4
        let expected =
            NilElement::from_ratio(1, 2) + eps[0].scale(&Scalar::from_ratio(-1, 4));
        assert_eq!(inv, expected);
        assert_eq!(&x * &inv, int(1));
    }

    #[test]
    fn one_inverts_to_one() {
        assert_eq!(int(1).inverse().unwrap(), int(1));
    }

    #[test]
    fn nilpotents_are_not_invertible() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        assert_eq!(eps[0].inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn sqrt_examples() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        // √(r² + ε²) = r for ε² = 0: the nilpotent square vanishes in the algebra
        let r_sq_plus = int(9) + &eps[0] * &eps[0];
        assert_eq!(r_sq_plus.sqrt().unwrap(), int(3));
        // √(4 + ε) = 2 + ε/4
        let x = int(4) + &eps[0];
        let root = x.sqrt().unwrap();
        assert_eq!(root, int(2) + eps[0].scale(&Scalar::from_ratio(1, 4)));
        assert_eq!(&root * &root, x);
        // √1 = 1
        assert_eq!(int(1).sqrt().unwrap(), int(1));
    }

    #[test]
    fn sqrt_requires_positive_pure_part() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        assert_eq!(eps[0].sqrt(), Err(Error::PurePartNotPositive));
        assert_eq!(int(-4).sqrt(), Err(Error::PurePartNotPositive));
    }

    #[test]
    fn fresh_batch_sizes() {
        let mut table = BatchTable::new();
        let (_, none) = table.fresh_batch(0);
        assert!(none.is_empty());
        let (_, one) = table.fresh_batch(1);
        assert_eq!(one.len(), 1);
        let (_, two) = table.fresh_batch(2);
        assert_eq!(two.len(), 2);
        // independence across batches
        assert!(!(&one[0] * &two[0]).is_zero());
    }

    #[test]
    fn kl_cancel_linear_extraction() {
        let mut table = BatchTable::new();
        let (b, d) = table.fresh_batch(1);
        let x = d[0].scale(&Scalar::from_int(3));
        let dec = table.kl_cancel(&x, b).unwrap();
        assert!(dec.constant.is_zero());
        assert_eq!(dec.coefficients[0], int(3));
        assert!(!dec.vanishes_generically());

        let zero_dec = table.kl_cancel(&NilElement::zero(), b).unwrap();
        assert!(zero_dec.vanishes_generically());
    }

    #[test]
    fn kl_cancel_forces_foreign_coefficient() {
        let mut table = BatchTable::new();
        let (_, x1) = table.fresh_batch(1);
        let (b, d) = table.fresh_batch(1);
        let expr = (&x1[0] * &d[0]).scale(&Scalar::from_int(2));
        let dec = table.kl_cancel(&expr, b).unwrap();
        assert!(dec.constant.is_zero());
        assert_eq!(dec.coefficients[0], x1[0].scale(&Scalar::from_int(2)));
        // generic vanishing would force 2·x₁ = 0, i.e. x₁ = 0
        assert!(!dec.vanishes_generically());
    }

    #[test]
    fn kl_soundness_for_fresh_batch() {
        let mut table = BatchTable::new();
        let (_, other) = table.fresh_batch(2);
        let x = int(5) + &other[0] - other[1].scale(&Scalar::from_ratio(2, 3));
        let (b, d) = table.fresh_batch(1);
        let dec = table.kl_cancel(&(&x * &d[0]), b).unwrap();
        assert!(dec.constant.is_zero());
        assert_eq!(dec.coefficients[0], x);
    }

    #[test]
    fn unknown_batch_is_an_error() {
        let table = BatchTable::new();
        assert_eq!(
            table.kl_cancel(&NilElement::zero(), BatchId(7)),
            Err(Error::UnknownBatch(7))
        );
    }

    #[test]
    #[should_panic(expected = "different algebra contexts")]
    fn mixing_contexts_panics() {
        let mut t1 = BatchTable::new();
        let mut t2 = BatchTable::new();
        let (_, a) = t1.fresh_batch(1);
        let (_, b) = t2.fresh_batch(1);
        let _ = &a[0] + &b[0];
    }

    #[test]
    fn nilpotency_order_bound() {
        let mut table = BatchTable::new();
        let (_, e1) = table.fresh_batch(1);
        let (_, e2) = table.fresh_batch(1);
        let (_, e3) = table.fresh_batch(1);
        let n = &e1[0] + &e2[0] + &e3[0];
        let mut p = n.clone();
        for _ in 0..3 {
            p = &p * &n;
        }
        // with 3 batches, the nilpotent part to the 4th power vanishes
        assert!(p.is_zero());
    }
}

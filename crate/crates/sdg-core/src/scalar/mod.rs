//! Exact constructible reals: rationals closed under field operations and
//! square roots of positives.
//!
//! A [`Scalar`] is stored in canonical form over a tower of quadratic
//! extensions. Each tower generator is the square root of a provably positive
//! element of the tower below it, so every value is a sparse linear
//! combination of square-free products of generators with rational
//! coefficients. Canonical form makes the zero test syntactic, which is what
//! turns every predicate of the geometry kernel into a decision procedure:
//!
//! * `sign` is total and exact (trichotomy holds),
//! * arithmetic is exact, e.g. `(a + b) - b` is canonically equal to `a`,
//! * `sqrt` first searches the existing tower (so `√8 - 2·√2` normalizes to
//!   zero) and only then adjoins a new generator.
//!
//! Sign decisions use a refinable dyadic interval enclosure as a fast filter
//! and fall back to exact recursive comparison in the tower, so an enclosure
//! can never produce a wrong answer, only a fast one.

mod interval;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use interval::Interval;

/// Exact sign of a scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    fn of_rational(q: &BigRational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

static SQRT_DEPTH_CAP: AtomicU32 = AtomicU32::new(8);

/// Current cap on the nesting depth of square roots.
pub fn sqrt_depth_cap() -> u32 {
    SQRT_DEPTH_CAP.load(AtomicOrdering::Relaxed)
}

/// Override the square-root nesting cap. Intended to be called once at
/// startup, before values are built; exceeding the cap is reported as a
/// resource error, never as a wrong answer.
pub fn set_sqrt_depth_cap(cap: u32) {
    SQRT_DEPTH_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

const MAX_GENERATORS: usize = 64;

/// Subset of tower generators, as a bitmask.
type Mask = u64;

/// Canonical sparse form: mask of generators -> nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
struct Repr {
    terms: BTreeMap<Mask, BigRational>,
}

impl Repr {
    fn zero() -> Repr {
        Repr::default()
    }

    fn from_rational(q: BigRational) -> Repr {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0, q);
        }
        Repr { terms }
    }

    fn basis(mask: Mask) -> Repr {
        let mut terms = BTreeMap::new();
        terms.insert(mask, BigRational::one());
        Repr { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of tower levels needed: one past the highest generator used.
    fn level(&self) -> usize {
        self.terms
            .keys()
            .map(|m| (Mask::BITS - m.leading_zeros()) as usize)
            .max()
            .unwrap_or(0)
    }

    fn rational(&self) -> BigRational {
        debug_assert!(self.level() == 0);
        self.terms.get(&0).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, mask: Mask, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn add(&self, other: &Repr) -> Repr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    fn neg(&self) -> Repr {
        Repr {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    fn sub(&self, other: &Repr) -> Repr {
        self.add(&other.neg())
    }

    fn scale(&self, q: &BigRational) -> Repr {
        if q.is_zero() {
            return Repr::zero();
        }
        Repr {
            terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    /// Split off generator `bit`: returns (part without it, cofactor of it).
    fn split(&self, bit: usize) -> (Repr, Repr) {
        let flag = 1u64 << bit;
        let mut without = Repr::zero();
        let mut cofactor = Repr::zero();
        for (m, c) in &self.terms {
            if m & flag != 0 {
                cofactor.terms.insert(m & !flag, c.clone());
            } else {
                without.terms.insert(*m, c.clone());
            }
        }
        (without, cofactor)
    }

    /// Multiply by the basis generator `bit` (no mask may already use it).
    fn shift_bit(&self, bit: usize) -> Repr {
        let flag = 1u64 << bit;
        Repr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m & flag == 0);
                    (m | flag, c.clone())
                })
                .collect(),
        }
    }
}

/// A tower generator: the positive square root of `radicand`, an element of
/// the tower strictly below it.
struct Generator {
    radicand: Repr,
    depth: u32,
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.radicand == other.radicand
    }
}

/// A tower of real quadratic extensions of the rationals. Shared immutably
/// between scalars; the interval cache is the only interior state and is
/// synchronized, so a `Scalar` behaves as a pure value.
struct Tower {
    gens: Vec<Generator>,
    cache: Mutex<Vec<Option<(u64, Interval)>>>,
}

impl Tower {
    fn new(gens: Vec<Generator>) -> Tower {
        let cache = Mutex::new(vec![None; gens.len()]);
        Tower { gens, cache }
    }

    fn mul(&self, x: &Repr, y: &Repr) -> Repr {
        if x.is_zero() || y.is_zero() {
            return Repr::zero();
        }
        let level = x.level().max(y.level());
        if level == 0 {
            return Repr::from_rational(x.rational() * y.rational());
        }
        let bit = level - 1;
        let (xu, xv) = x.split(bit);
        let (yu, yv) = y.split(bit);
        let mut low = self.mul(&xu, &yu);
        if !xv.is_zero() && !yv.is_zero() {
            let vv = self.mul(&xv, &yv);
            low = low.add(&self.mul(&vv, &self.gens[bit].radicand));
        }
        let mut cross = self.mul(&xu, &yv);
        cross = cross.add(&self.mul(&xv, &yu));
        low.add(&cross.shift_bit(bit))
    }

    /// Multiplicative inverse; `x` must be nonzero.
    fn inv(&self, x: &Repr) -> Repr {
        debug_assert!(!x.is_zero());
        let level = x.level();
        if level == 0 {
            return Repr::from_rational(x.rational().recip());
        }
        let bit = level - 1;
        let (u, v) = x.split(bit);
        // 1/(u + v·g) = (u - v·g) / (u² - v²·a)
        let v_sq = self.mul(&v, &v);
        let denom = self
            .mul(&u, &u)
            .sub(&self.mul(&v_sq, &self.gens[bit].radicand));
        debug_assert!(!denom.is_zero());
        let di = self.inv(&denom);
        let high = self.mul(&v, &di).neg();
        self.mul(&u, &di).add(&high.shift_bit(bit))
    }

    fn sign(&self, x: &Repr) -> Sign {
        if x.is_zero() {
            return Sign::Zero;
        }
        let level = x.level();
        if level == 0 {
            return Sign::of_rational(&x.rational());
        }
        // Interval fast path: enclosures prove most nonzero signs cheaply.
        for prec in [64u64, 256] {
            if let Some(s) = self.eval_interval(x, prec).sign() {
                return s;
            }
        }
        self.sign_exact(x, level)
    }

    fn sign_exact(&self, x: &Repr, level: usize) -> Sign {
        debug_assert!(level >= 1 && x.level() == level);
        let bit = level - 1;
        let (u, v) = x.split(bit);
        // {1, g} is a basis, so a nonzero canonical cofactor is nonzero.
        let sv = self.sign(&v);
        debug_assert!(sv != Sign::Zero);
        if u.is_zero() {
            return sv; // g > 0
        }
        let su = self.sign(&u);
        if su == Sign::Zero {
            return sv;
        }
        if su == sv {
            return su;
        }
        // Opposite signs: compare u² against v²·a.
        let v_sq = self.mul(&v, &v);
        let t = self
            .mul(&u, &u)
            .sub(&self.mul(&v_sq, &self.gens[bit].radicand));
        let st = self.sign(&t);
        debug_assert!(st != Sign::Zero);
        if su == Sign::Positive {
            st
        } else {
            st.flip()
        }
    }

    /// Square root inside the existing tower, if one exists.
    /// Requires `x >= 0`; the result is the nonnegative root.
    fn sqrt_in_tower(&self, x: &Repr) -> Option<Repr> {
        self.sqrt_level(x, self.gens.len())
    }

    fn sqrt_level(&self, x: &Repr, level: usize) -> Option<Repr> {
        if x.is_zero() {
            return Some(Repr::zero());
        }
        if level == 0 {
            let q = x.rational();
            debug_assert!(!q.is_negative());
            let rn = q.numer().sqrt();
            let rd = q.denom().sqrt();
            if &rn * &rn == *q.numer() && &rd * &rd == *q.denom() {
                return Some(Repr::from_rational(BigRational::new(rn, rd)));
            }
            return None;
        }
        let bit = level - 1;
        let (u, v) = x.split(bit);
        let radicand = &self.gens[bit].radicand;
        if v.is_zero() {
            // x lives below this level, but its root may still need g:
            // either c² = x with c below, or (d·g)² = d²·a = x.
            if let Some(c) = self.sqrt_level(&u, level - 1) {
                return Some(c);
            }
            let quotient = self.mul(&u, &self.inv(radicand));
            if let Some(d) = self.sqrt_level(&quotient, level - 1) {
                return Some(d.shift_bit(bit));
            }
            return None;
        }
        if u.is_zero() {
            // v·g with v != 0 is never a square: c² + d²·a = 0 forces c = d = 0.
            return None;
        }
        // Solve (c + d·g)² = u + v·g: c² = (u ± √(u² - v²·a))/2, d = v/(2c).
        let v_sq = self.mul(&v, &v);
        let delta = self.mul(&u, &u).sub(&self.mul(&v_sq, radicand));
        if self.sign(&delta) == Sign::Negative {
            return None;
        }
        let w = self.sqrt_level(&delta, level - 1)?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for w_signed in [w.clone(), w.neg()] {
            let t = u.add(&w_signed).scale(&half);
            if self.sign(&t) != Sign::Positive {
                continue;
            }
            let Some(c) = self.sqrt_level(&t, level - 1) else {
                continue;
            };
            let two_c = c.scale(&BigRational::from(BigInt::from(2)));
            let d = self.mul(&v, &self.inv(&two_c));
            let mut y = c.add(&d.shift_bit(bit));
            if self.sign(&y) == Sign::Negative {
                y = y.neg();
            }
            debug_assert!(self.mul(&y, &y).sub(x).is_zero());
            return Some(y);
        }
        None
    }

    fn eval_interval(&self, x: &Repr, prec: u64) -> Interval {
        let mut acc = Interval::zero();
        for (mask, coeff) in &x.terms {
            let mut term = Interval::from_rational(coeff, prec);
            let mut bits = *mask;
            while bits != 0 {
                let bit = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                term = term.mul(&self.gen_interval(bit, prec), prec);
            }
            acc = acc.add(&term, prec);
        }
        acc
    }

    fn gen_interval(&self, i: usize, prec: u64) -> Interval {
        {
            let cache = self.cache.lock().unwrap();
            if let Some((p, iv)) = &cache[i] {
                if *p >= prec {
                    return iv.clone();
                }
            }
        }
        let rad = self.eval_interval(&self.gens[i].radicand, prec + 8);
        let iv = rad.sqrt(prec);
        let mut cache = self.cache.lock().unwrap();
        cache[i] = Some((prec, iv.clone()));
        iv
    }
}

fn empty_tower() -> Arc<Tower> {
    static EMPTY: OnceLock<Arc<Tower>> = OnceLock::new();
    EMPTY.get_or_init(|| Arc::new(Tower::new(Vec::new()))).clone()
}

/// Is `prefix` an initial segment of `longer`?
fn is_prefix(prefix: &Tower, longer: &Tower) -> bool {
    prefix.gens.len() <= longer.gens.len()
        && prefix
            .gens
            .iter()
            .zip(longer.gens.iter())
            .all(|(a, b)| a == b)
}

/// Adjoin the square root of `x` (which must be provably positive) to the
/// tower, reusing the tower when the root already exists in it.
fn adjoin_sqrt(tower: &Arc<Tower>, x: &Repr, enforce_cap: bool) -> Result<(Arc<Tower>, Repr)> {
    if let Some(y) = tower.sqrt_in_tower(x) {
        return Ok((tower.clone(), y));
    }
    let mut depth = 1;
    for mask in x.terms.keys() {
        let mut bits = *mask;
        while bits != 0 {
            let bit = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            depth = depth.max(tower.gens[bit].depth + 1);
        }
    }
    let cap = sqrt_depth_cap();
    if enforce_cap && depth > cap {
        return Err(Error::SqrtDepthExceeded { depth, cap });
    }
    if tower.gens.len() >= MAX_GENERATORS {
        return Err(Error::GeneratorLimit);
    }
    let mut gens: Vec<Generator> = tower
        .gens
        .iter()
        .map(|g| Generator {
            radicand: g.radicand.clone(),
            depth: g.depth,
        })
        .collect();
    let index = gens.len();
    gens.push(Generator {
        radicand: x.clone(),
        depth,
    });
    Ok((Arc::new(Tower::new(gens)), Repr::basis(1u64 << index)))
}

/// Rewrite `repr` (an element of `src`) as an element of an extension of
/// `dst`, adjoining generators as needed.
fn import_repr(dst: &Arc<Tower>, src: &Tower, repr: &Repr) -> (Arc<Tower>, Repr) {
    let mut tower = dst.clone();
    let mut gen_exprs: Vec<Repr> = Vec::with_capacity(src.gens.len());
    for gen in &src.gens {
        let radicand = eval_poly(&tower, &gen.radicand, &gen_exprs);
        let (next, expr) =
            adjoin_sqrt(&tower, &radicand, false).expect("tower merge exceeded generator limit");
        tower = next;
        gen_exprs.push(expr);
    }
    let out = eval_poly(&tower, repr, &gen_exprs);
    (tower, out)
}

/// Evaluate a source-tower representation given expressions for its
/// generators in the target tower.
fn eval_poly(tower: &Arc<Tower>, repr: &Repr, gen_exprs: &[Repr]) -> Repr {
    let mut acc = Repr::zero();
    for (mask, coeff) in &repr.terms {
        let mut term = Repr::from_rational(coeff.clone());
        let mut bits = *mask;
        while bits != 0 {
            let bit = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            term = tower.mul(&term, &gen_exprs[bit]);
        }
        acc = acc.add(&term);
    }
    acc
}

/// An exact constructible real.
#[derive(Clone)]
pub struct Scalar {
    tower: Arc<Tower>,
    repr: Repr,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            tower: empty_tower(),
            repr: Repr::zero(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_big_rational(BigRational::from(BigInt::from(n)))
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::from_big_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big_rational(q: BigRational) -> Scalar {
        Scalar {
            tower: empty_tower(),
            repr: Repr::from_rational(q),
        }
    }

    pub fn sign(&self) -> Sign {
        self.tower.sign(&self.repr)
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The positive square root. The operand must be strictly positive.
    pub fn sqrt(&self) -> Result<Scalar> {
        if self.sign() != Sign::Positive {
            return Err(Error::SqrtNonPositive);
        }
        let (tower, repr) = adjoin_sqrt(&self.tower, &self.repr, true)?;
        Ok(Scalar { tower, repr })
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.sign() == Sign::Zero {
            return Err(Error::DivisionByZero);
        }
        let (tower, a, b) = unify(self, rhs);
        let repr = tower.mul(&a, &tower.inv(&b));
        Ok(Scalar { tower, repr })
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().try_div(self)
    }

    /// The value as a rational, when no square-root generator is involved.
    pub fn to_big_rational(&self) -> Option<BigRational> {
        if self.repr.level() == 0 {
            Some(self.repr.rational())
        } else {
            None
        }
    }

    pub fn approx_f64(&self) -> f64 {
        if self.repr.is_zero() {
            return 0.0;
        }
        self.tower
            .eval_interval(&self.repr, 64)
            .midpoint()
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering with exactly `digits` fractional digits,
    /// rounding ties away from the integer floor. Deterministic: computed by
    /// interval refinement with an exact tie test.
    pub fn to_decimal(&self, digits: u32) -> String {
        let pow10 = BigInt::from(10u32).pow(digits);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let scaled = self
            .repr
            .scale(&BigRational::from(pow10.clone()))
            .add(&Repr::from_rational(half));
        let n = self.floor_of(&scaled);
        let negative = n.is_negative();
        let abs = n.magnitude().clone();
        let (int_part, frac_part) = num_integer::Integer::div_rem(&abs, &pow10.magnitude().clone());
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }

    fn floor_of(&self, repr: &Repr) -> BigInt {
        let mut prec = 64u64;
        loop {
            let iv = self.tower.eval_interval(repr, prec);
            let flo = iv.lo.floor();
            let fhi = iv.hi.floor();
            if flo == fhi {
                return flo;
            }
            if &flo + 1 == fhi {
                // Interval straddles one integer boundary; settle exactly.
                let diff = repr.sub(&Repr::from_rational(BigRational::from(fhi.clone())));
                if self.tower.sign(&diff) == Sign::Zero {
                    return fhi;
                }
            }
            prec *= 2;
        }
    }
}

/// Canonicalize two scalars into one shared tower.
fn unify(a: &Scalar, b: &Scalar) -> (Arc<Tower>, Repr, Repr) {
    if Arc::ptr_eq(&a.tower, &b.tower) {
        return (a.tower.clone(), a.repr.clone(), b.repr.clone());
    }
    if is_prefix(&b.tower, &a.tower) {
        return (a.tower.clone(), a.repr.clone(), b.repr.clone());
    }
    if is_prefix(&a.tower, &b.tower) {
        return (b.tower.clone(), a.repr.clone(), b.repr.clone());
    }
    let (tower, b_repr) = import_repr(&a.tower, &b.tower, &b.repr);
    (tower, a.repr.clone(), b_repr)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (tower, a, b) = unify(self, other);
        tower.sign(&a.sub(&b)) == Sign::Zero
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (tower, a, b) = unify(self, other);
        match tower.sign(&a.sub(&b)) {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $impl_fn:expr) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $impl_fn;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| {
    let (tower, x, y) = unify(a, b);
    Scalar {
        repr: x.add(&y),
        tower,
    }
});

scalar_binop!(Sub, sub, |a, b| {
    let (tower, x, y) = unify(a, b);
    Scalar {
        repr: x.sub(&y),
        tower,
    }
});

scalar_binop!(Mul, mul, |a, b| {
    let (tower, x, y) = unify(a, b);
    Scalar {
        repr: tower.mul(&x, &y),
        tower,
    }
});

scalar_binop!(Div, div, |a, b| a
    .try_div(b)
    .expect("division by a zero Scalar"));

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            tower: self.tower.clone(),
            repr: self.repr.neg(),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_repr(&self.tower, &self.repr, f)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_repr(&self.tower, &self.repr, f)
    }
}

fn fmt_repr(tower: &Tower, repr: &Repr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if repr.is_zero() {
        return write!(f, "0");
    }
    for (i, (mask, coeff)) in repr.terms.iter().enumerate() {
        let negative = coeff.is_negative();
        if i > 0 {
            f.write_str(if negative { " - " } else { " + " })?;
        } else if negative && *mask != 0 {
            write!(f, "-")?;
        }
        let magnitude = if i > 0 || *mask != 0 {
            coeff.abs()
        } else {
            coeff.clone()
        };
        if *mask == 0 {
            write!(f, "{magnitude}")?;
            continue;
        }
        if magnitude != BigRational::one() {
            write!(f, "{magnitude}·")?;
        }
        let mut bits = *mask;
        let mut first = true;
        while bits != 0 {
            let bit = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "√(")?;
            fmt_repr(tower, &tower.gens[bit].radicand, f)?;
            write!(f, ")")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn rational_identities() {
        assert_eq!(ratio(1, 3) + ratio(2, 3), int(1));
        assert_eq!((ratio(1, 3) + ratio(2, 3)).sign(), Sign::Positive);
        let a = ratio(22, 7);
        let b = ratio(-3, 11);
        assert!(((&a + &b) - &b - &a).is_zero());
    }

    #[test]
    fn sqrt_two_squares_back() {
        let r = int(2).sqrt().unwrap();
        assert_eq!(&r * &r, int(2));
        assert_eq!(r.sign(), Sign::Positive);
    }

    #[test]
    fn conjugate_product_is_rational() {
        let r = int(2).sqrt().unwrap();
        let p = (&r + &int(1)) * (&r - &int(1));
        assert_eq!(p, int(1));
    }

    #[test]
    fn perfect_square_roots_fold_to_rationals() {
        assert_eq!(int(4).sqrt().unwrap(), int(2));
        assert_eq!(ratio(9, 4).sqrt().unwrap(), ratio(3, 2));
        assert!(int(4).sqrt().unwrap().to_big_rational().is_some());
    }

    #[test]
    fn sign_examples() {
        assert_eq!((int(2).sqrt().unwrap() - int(1)).sign(), Sign::Positive);
        assert_eq!(ratio(-3, 7).sign(), Sign::Negative);
        // √8 = 2·√2, detected by in-tower normalization
        let e = int(8).sqrt().unwrap() - int(2) * int(2).sqrt().unwrap();
        assert_eq!(e.sign(), Sign::Zero);
    }

    #[test]
    fn nested_radical_denests() {
        // √(3 + 2·√2) = 1 + √2
        let r2 = int(2).sqrt().unwrap();
        let inner = int(3) + int(2) * &r2;
        let root = inner.sqrt().unwrap();
        assert_eq!(root, int(1) + &r2);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(int(1).try_div(&int(0)), Err(Error::DivisionByZero));
        let hidden_zero = int(8).sqrt().unwrap() - int(2) * int(2).sqrt().unwrap();
        assert_eq!(int(1).try_div(&hidden_zero), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt_of_nonpositive_is_an_error() {
        assert_eq!(int(-1).sqrt(), Err(Error::SqrtNonPositive));
        assert_eq!(int(0).sqrt(), Err(Error::SqrtNonPositive));
    }

    #[test]
    fn depth_cap_is_a_resource_error() {
        let mut x = int(2);
        let mut failed = None;
        for _ in 0..12 {
            match (x.clone() + int(1)).sqrt() {
                Ok(y) => x = y,
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        match failed {
            Some(Error::SqrtDepthExceeded { cap, .. }) => assert_eq!(cap, sqrt_depth_cap()),
            other => panic!("expected depth cap error, got {other:?}"),
        }
    }

    #[test]
    fn mixed_tower_arithmetic() {
        let r2 = int(2).sqrt().unwrap();
        let r3 = int(3).sqrt().unwrap();
        let p = &r2 * &r3; // lives in a merged tower
        assert_eq!(&p * &p, int(6));
        assert_eq!(p, int(6).sqrt().unwrap());
    }

    #[test]
    fn ordering_is_total_and_exact() {
        let r2 = int(2).sqrt().unwrap();
        assert!(r2 > ratio(14142, 10000));
        assert!(r2 < ratio(14143, 10000));
        assert_eq!(int(8).sqrt().unwrap().cmp(&(int(2) * &r2)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn decimal_rendering_is_fixed_width() {
        assert_eq!(int(2).sqrt().unwrap().to_decimal(6), "1.414214");
        assert_eq!(ratio(-1, 2).to_decimal(6), "-0.500000");
        assert_eq!(int(3).to_decimal(2), "3.00");
        assert_eq!(ratio(1, 8).to_decimal(3), "0.125");
    }

    #[test]
    fn display_shows_radical_terms() {
        let x = int(1) + int(2) * int(2).sqrt().unwrap();
        assert_eq!(x.to_string(), "1 + 2·√(2)");
        let y = int(1) - int(2) * int(2).sqrt().unwrap();
        assert_eq!(y.to_string(), "1 - 2·√(2)");
        let z = -int(2).sqrt().unwrap();
        assert_eq!(z.to_string(), "-√(2)");
    }

    #[test]
    fn merging_towers_with_reordered_generators() {
        // same generators adjoined in opposite order still normalize together
        let r2_then_r3 = {
            let r2 = int(2).sqrt().unwrap();
            let r3 = (int(3) + &r2 - &r2).sqrt().unwrap();
            &r2 + &r3
        };
        let r3_then_r2 = {
            let r3 = int(3).sqrt().unwrap();
            let r2 = (int(2) + &r3 - &r3).sqrt().unwrap();
            &r2 + &r3
        };
        assert_eq!(r2_then_r3, r3_then_r2);
        assert!((r2_then_r3 - r3_then_r2).is_zero());
    }

    #[test]
    fn conjugate_radicals_denest_across_towers() {
        // (2+√3)(2-√3) = 1, so the product of their roots is exactly 1
        let r3 = int(3).sqrt().unwrap();
        let plus = (int(2) + &r3).sqrt().unwrap();
        let minus = (int(2) - &r3).sqrt().unwrap();
        assert_eq!(&plus * &minus, int(1));
        // and the sum squares to the denested 6 = 4 + 2·1
        let sum = &plus + &minus;
        assert_eq!(&sum * &sum, int(6));
        assert_eq!(sum, int(6).sqrt().unwrap());
    }

    #[test]
    fn three_radical_product() {
        let r2 = int(2).sqrt().unwrap();
        let r3 = int(3).sqrt().unwrap();
        let r5 = int(5).sqrt().unwrap();
        let p = &r2 * &r3 * &r5;
        assert_eq!(&p * &p, int(30));
        assert_eq!(p, int(30).sqrt().unwrap());
        // a vanishing alternating combination across all three towers
        let expr = &r2 * &r3 - int(6).sqrt().unwrap();
        assert!(((&expr * &r5) + &p - int(30).sqrt().unwrap()).is_zero());
    }
}

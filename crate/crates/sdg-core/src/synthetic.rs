//! Synthetic operators built from touching: interpolation, extrapolation,
//! the strong collinearity bracket and rays.
//!
//! The triangle equality `(abc)`, i.e. `ab + bc = ac`, is taut-string
//! collinearity; it survives transversal infinitesimal wobble. The bracket
//! `[abc]` adds ruler stiffness: one of six equivalent generic implications
//! between the distance conditions at the three points, each decided here by
//! proportionality of the induced linear forms on the monad.

use crate::error::{Error, Result};
use crate::geometry::{apart, dist, proportional_some_factor, Point};
use crate::nilpotent::NilElement;
use crate::scalar::Sign;

fn require_mutually_apart(a: &Point, b: &Point, c: &Point) -> Result<()> {
    if apart(a, b) && apart(b, c) && apart(a, c) {
        Ok(())
    } else {
        Err(Error::NotApart)
    }
}

/// The predicate `(abc)`: `ab + bc = ac`, exactly.
pub fn triangle_equality(a: &Point, b: &Point, c: &Point) -> Result<bool> {
    require_mutually_apart(a, b, c)?;
    let ab = dist(a, b)?;
    let bc = dist(b, c)?;
    let ac = dist(a, c)?;
    Ok((ab + bc - ac).is_zero())
}

/// The six equivalent generic conditions behind the bracket `[abc]`.
///
/// `B1`, for instance, reads: for every generic `b' ~ b`, `ab' = ab` implies
/// `b'c = bc`. On the monad both sides reduce to linear forms, and the
/// implication holds exactly when the conclusion form is a multiple of the
/// hypothesis form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollinearCondition {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl CollinearCondition {
    pub const ALL: [CollinearCondition; 6] = [
        CollinearCondition::A1,
        CollinearCondition::A2,
        CollinearCondition::B1,
        CollinearCondition::B2,
        CollinearCondition::C1,
        CollinearCondition::C2,
    ];
}

/// Evaluate one of the six generic implications. Requires `(abc)`.
pub fn collinear_condition(
    a: &Point,
    b: &Point,
    c: &Point,
    which: CollinearCondition,
) -> Result<bool> {
    require_mutually_apart(a, b, c)?;
    if !triangle_equality(a, b, c)? {
        return Err(Error::HypothesisFails("triangle equality (abc)"));
    }
    use CollinearCondition::*;
    let (hyp, concl) = match which {
        A1 => (a.sub(b), a.sub(c)),
        A2 => (a.sub(c), a.sub(b)),
        B1 => (b.sub(a), b.sub(c)),
        B2 => (b.sub(c), b.sub(a)),
        C1 => (c.sub(a), c.sub(b)),
        C2 => (c.sub(b), c.sub(a)),
    };
    proportional_some_factor(hyp.coords(), concl.coords())
}

/// The bracket `[abc]`: `(abc)` plus stiffness. Evaluates condition `B1`;
/// that the six conditions agree is a verified property of the suite, not an
/// assumption baked in here. Returns `false` (not an error) when `(abc)`
/// fails.
pub fn collinear(a: &Point, b: &Point, c: &Point) -> Result<bool> {
    require_mutually_apart(a, b, c)?;
    if !triangle_equality(a, b, c)? {
        return Ok(false);
    }
    collinear_condition(a, b, c, CollinearCondition::B1)
}

/// Aligned: some point is a bracket middle for the other two.
pub fn aligned(a: &Point, b: &Point, c: &Point) -> Result<bool> {
    Ok(collinear(a, b, c)? || collinear(b, a, c)? || collinear(a, c, b)?)
}

/// `a ◁ₛ c`: the point at distance `s` from `c`, towards `a`. Requires
/// `0 < s < ac` in the pure order.
pub fn interpolate(a: &Point, c: &Point, s: &NilElement) -> Result<Point> {
    if !apart(a, c) {
        return Err(Error::NotApart);
    }
    if s.pure_sign() != Sign::Positive {
        return Err(Error::OutOfRange("interpolation distance must be positive"));
    }
    let ac = dist(a, c)?;
    if (&ac - s).pure_sign() != Sign::Positive {
        return Err(Error::OutOfRange(
            "interpolation distance must be less than the distance",
        ));
    }
    let factor = s * &ac.inverse().expect("distance is invertible");
    Ok(c.add(&a.sub(c).scale(&factor)))
}

/// `a ▷ₛ b`: the point at distance `s` beyond `b`, away from `a`. Requires
/// `s > 0` in the pure order.
pub fn extrapolate(a: &Point, b: &Point, s: &NilElement) -> Result<Point> {
    if !apart(a, b) {
        return Err(Error::NotApart);
    }
    if s.pure_sign() != Sign::Positive {
        return Err(Error::OutOfRange("extrapolation distance must be positive"));
    }
    let ab = dist(a, b)?;
    let factor = s * &ab.inverse().expect("distance is invertible");
    Ok(b.add(&b.sub(a).scale(&factor)))
}

/// Three mutually apart points, the subject of `(abc)` and `[abc]`.
#[derive(Clone, Debug)]
pub struct Triple {
    a: Point,
    b: Point,
    c: Point,
}

impl Triple {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Triple> {
        require_mutually_apart(&a, &b, &c)?;
        Ok(Triple { a, b, c })
    }

    pub fn points(&self) -> (&Point, &Point, &Point) {
        (&self.a, &self.b, &self.c)
    }

    pub fn triangle_equality(&self) -> Result<bool> {
        triangle_equality(&self.a, &self.b, &self.c)
    }

    pub fn collinear(&self) -> Result<bool> {
        collinear(&self.a, &self.b, &self.c)
    }

    pub fn aligned(&self) -> Result<bool> {
        aligned(&self.a, &self.b, &self.c)
    }
}

/// The ray generated by the pair `(a, b)`: `s ↦ a ▷ₛ b` for `s > 0`, with
/// source `b` (the source itself is not on the ray).
#[derive(Clone, Debug)]
pub struct Ray {
    director: Point,
    source: Point,
}

impl Ray {
    pub fn new(director: Point, source: Point) -> Result<Ray> {
        if !apart(&director, &source) {
            return Err(Error::NotApart);
        }
        Ok(Ray { director, source })
    }

    pub fn source(&self) -> &Point {
        &self.source
    }

    pub fn director(&self) -> &Point {
        &self.director
    }

    pub fn eval(&self, s: &NilElement) -> Result<Point> {
        extrapolate(&self.director, &self.source, s)
    }
}

/// Check that extrapolation does not depend on the director along its own
/// line: under `[a'ab]`, both `a' ▷ₛ b` and `a ▷ₛ b` give the same point.
pub fn extrapolate_source_invariance(
    a_prime: &Point,
    a: &Point,
    b: &Point,
    s: &NilElement,
) -> Result<bool> {
    if !collinear(a_prime, a, b)? {
        return Err(Error::HypothesisFails("[a'ab] must hold"));
    }
    Ok(extrapolate(a_prime, b, s)? == extrapolate(a, b, s)?)
}

/// The four bracket assertions on an ordered quadruple, plus whether the
/// two-implies-four closure law is respected.
#[derive(Debug, Clone)]
pub struct ClosureRecord {
    /// `[abc]`, `[abd]`, `[acd]`, `[bcd]` in that order.
    pub brackets: [bool; 4],
    pub closure_ok: bool,
}

/// Evaluate the closure law: if at least two of the four bracket assertions
/// hold, all four must.
pub fn collinearity_closure(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<ClosureRecord> {
    let brackets = [
        collinear(a, b, c)?,
        collinear(a, b, d)?,
        collinear(a, c, d)?,
        collinear(b, c, d)?,
    ];
    let holding = brackets.iter().filter(|&&x| x).count();
    let closure_ok = holding < 2 || brackets.iter().all(|&x| x);
    Ok(ClosureRecord {
        brackets,
        closure_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::BatchTable;

    fn pt(coords: &[i64]) -> Point {
        Point::from_ints(coords)
    }

    fn nil(n: i64) -> NilElement {
        NilElement::from_int(n)
    }

    /// The obtuse-triangle picture: a = (-3,0), b' = (0,ε), c = (4,0).
    fn basic_picture(table: &mut BatchTable) -> (Point, Point, Point, Point) {
        let (_, eps) = table.fresh_batch(1);
        let a = pt(&[-3, 0]);
        let b = pt(&[0, 0]);
        let b_wobble = Point::new(vec![NilElement::zero(), eps[0].clone()]);
        let c = pt(&[4, 0]);
        (a, b, b_wobble, c)
    }

    #[test]
    fn taut_string_survives_wobble_but_bracket_detects_it() {
        let mut table = BatchTable::new();
        let (a, b, b_wobble, c) = basic_picture(&mut table);
        assert!(triangle_equality(&a, &b, &c).unwrap());
        assert!(triangle_equality(&a, &b_wobble, &c).unwrap());
        assert!(collinear(&a, &b, &c).unwrap());
        // transversal rigidity: the wobbled middle fails the bracket
        assert!(!collinear(&a, &b_wobble, &c).unwrap());
        for which in CollinearCondition::ALL {
            assert!(collinear_condition(&a, &b, &c, which).unwrap());
            assert!(!collinear_condition(&a, &b_wobble, &c, which).unwrap());
        }
    }

    #[test]
    fn triangle_equality_fails_off_line() {
        let a = pt(&[0, 0]);
        let b = pt(&[1, 1]);
        let c = pt(&[2, 0]);
        // 2·√2 ≠ 2
        assert!(!triangle_equality(&a, &b, &c).unwrap());
        assert!(!collinear(&a, &b, &c).unwrap());
        assert!(!aligned(&a, &b, &c).unwrap());
    }

    #[test]
    fn interpolation_examples() {
        assert_eq!(
            interpolate(&pt(&[0, 0]), &pt(&[5, 0]), &nil(2)).unwrap(),
            pt(&[3, 0])
        );
        assert_eq!(
            interpolate(&pt(&[0, 0]), &pt(&[0, 5]), &NilElement::from_ratio(5, 2)).unwrap(),
            Point::new(vec![NilElement::zero(), NilElement::from_ratio(5, 2)])
        );
        let mid = interpolate(&pt(&[0, 0]), &pt(&[3, 4]), &NilElement::from_ratio(5, 2)).unwrap();
        assert_eq!(
            mid,
            Point::new(vec![
                NilElement::from_ratio(3, 2),
                NilElement::from_int(2)
            ])
        );
        // out-of-range distances are domain errors
        assert!(matches!(
            interpolate(&pt(&[0, 0]), &pt(&[5, 0]), &nil(7)),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            interpolate(&pt(&[0, 0]), &pt(&[5, 0]), &nil(-1)),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn extrapolation_examples() {
        assert_eq!(
            extrapolate(&pt(&[-1, 0]), &pt(&[0, 0]), &nil(1)).unwrap(),
            pt(&[1, 0])
        );
        assert_eq!(
            extrapolate(&pt(&[0, 0]), &pt(&[3, 4]), &nil(5)).unwrap(),
            pt(&[6, 8])
        );
        assert!(matches!(
            extrapolate(&pt(&[0, 0]), &pt(&[3, 4]), &nil(0)),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn interpolation_extrapolation_round_trips() {
        let a = pt(&[1, 2]);
        let b = pt(&[4, 6]);
        let s = NilElement::from_ratio(7, 3);
        let c = extrapolate(&a, &b, &s).unwrap();
        assert_eq!(interpolate(&a, &c, &s).unwrap(), b);
        let back = extrapolate(&a, &interpolate(&a, &c, &s).unwrap(), &s).unwrap();
        assert_eq!(back, c);
        // the characterization: distance s and the bracket
        assert_eq!(dist(&b, &c).unwrap(), s);
        assert!(collinear(&a, &b, &c).unwrap());
    }

    #[test]
    fn ray_composition_and_isometry() {
        let ray = Ray::new(pt(&[0, 0]), pt(&[1, 0])).unwrap();
        let p1 = ray.eval(&nil(1)).unwrap();
        assert_eq!(p1, pt(&[2, 0]));
        let again = extrapolate(&pt(&[0, 0]), &p1, &nil(1)).unwrap();
        assert_eq!(again, pt(&[3, 0]));
        assert_eq!(again, ray.eval(&nil(2)).unwrap());
        // isometry: dist(eval s, eval t) = t - s
        let s = NilElement::from_ratio(3, 2);
        let t = NilElement::from_ratio(7, 2);
        let d = dist(&ray.eval(&s).unwrap(), &ray.eval(&t).unwrap()).unwrap();
        assert_eq!(d, &t - &s);
    }

    #[test]
    fn isometry_alone_is_not_a_ray() {
        // s ↦ (s, ε·s²) preserves the triangle equality but not the bracket
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let curve = |s: i64| {
            Point::new(vec![
                nil(s),
                eps[0].scale(&crate::scalar::Scalar::from_int(s * s)),
            ])
        };
        let (x, y, z) = (curve(1), curve(2), curve(4));
        assert!(triangle_equality(&x, &y, &z).unwrap());
        assert!(!collinear(&x, &y, &z).unwrap());
    }

    #[test]
    fn source_invariance_along_the_line() {
        let a_prime = pt(&[-2, 0]);
        let a = pt(&[-1, 0]);
        let b = pt(&[0, 0]);
        assert!(extrapolate_source_invariance(&a_prime, &a, &b, &nil(3)).unwrap());
        assert_eq!(
            extrapolate(&a_prime, &b, &nil(3)).unwrap(),
            pt(&[3, 0])
        );
        // hypothesis failure is a usage error
        let off = pt(&[-2, 1]);
        assert!(matches!(
            extrapolate_source_invariance(&off, &a, &b, &nil(3)),
            Err(Error::HypothesisFails(_))
        ));
    }

    #[test]
    fn closure_on_chained_extrapolations() {
        let a = pt(&[0, 0]);
        let b = pt(&[3, 4]);
        let c = extrapolate(&a, &b, &nil(5)).unwrap();
        let d = extrapolate(&a, &c, &NilElement::from_ratio(5, 2)).unwrap();
        let record = collinearity_closure(&a, &b, &c, &d).unwrap();
        assert_eq!(record.brackets, [true, true, true, true]);
        assert!(record.closure_ok);

        // generic quadruple: fewer than two brackets hold, nothing asserted
        let record2 =
            collinearity_closure(&pt(&[0, 0]), &pt(&[1, 3]), &pt(&[5, 1]), &pt(&[2, 7])).unwrap();
        assert!(record2.brackets.iter().filter(|&&x| x).count() < 2);
        assert!(record2.closure_ok);
    }

    #[test]
    fn bracket_is_symmetric() {
        let a = pt(&[0, 0]);
        let b = pt(&[3, 4]);
        let c = extrapolate(&a, &b, &nil(5)).unwrap();
        assert!(collinear(&a, &b, &c).unwrap());
        assert!(collinear(&c, &b, &a).unwrap());
        assert!(aligned(&b, &c, &a).unwrap());
    }

    #[test]
    fn step_lengths_may_carry_infinitesimals() {
        // distances quantify over positives, which include nilpotent bumps
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let a = pt(&[0, 0]);
        let b = pt(&[1, 0]);
        let s = NilElement::from_int(2) + &eps[0];
        let c = extrapolate(&a, &b, &s).unwrap();
        assert_eq!(
            c,
            Point::new(vec![NilElement::from_int(3) + &eps[0], NilElement::zero()])
        );
        assert_eq!(dist(&b, &c).unwrap(), s);
        assert!(collinear(&a, &b, &c).unwrap());
        assert_eq!(interpolate(&a, &c, &s).unwrap(), b);
    }

    #[test]
    fn triple_and_ray_require_apartness() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let near = Point::new(vec![eps[0].clone(), NilElement::zero()]);
        assert!(matches!(
            Triple::new(pt(&[0, 0]), near.clone(), pt(&[1, 0])),
            Err(Error::NotApart)
        ));
        assert!(matches!(
            Ray::new(pt(&[0, 0]), near),
            Err(Error::NotApart)
        ));
    }
}

//! Contact elements, wavefronts and envelopes.
//!
//! A contact element at `b` is the monad slice `M(b) ∩ A` of a sphere through
//! `b`; it is determined by `b` and a normal direction, and a transversal
//! orientation selects which of the two classes of touching spheres counts as
//! the *inside*. Wavefront propagation moves the element distance `s` along
//! the oriented normal: the point operator `P ⊢ s` and the element operator
//! `P ⊨ s`. Hypersurfaces are finite samples of oriented contact elements,
//! which is enough to verify the envelope statements exactly, sample by
//! sample.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::geometry::{
    apart, constrained_probe, neighbour, touches, Figure, Hyperplane, Point, Sphere,
};
use crate::nilpotent::{BatchTable, NilElement};
use crate::scalar::{Scalar, Sign};
use crate::synthetic::{extrapolate, interpolate};

/// Transversal orientation: which side of the element is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    fn factor(self) -> NilElement {
        match self {
            Orientation::Positive => NilElement::from_int(1),
            Orientation::Negative => NilElement::from_int(-1),
        }
    }
}

/// Whether a representing sphere touches the element from the inside
/// (negative side) or the outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    Outside,
}

/// A transversally oriented contact element: base point, unnormalized normal
/// and orientation. As a set it is `{b + d : d generic, <d, normal> = 0}`,
/// focused with focus `b`. Normals stay unnormalized so rational scenes stay
/// rational; normalization happens inside [`front_step`].
#[derive(Clone, Debug)]
pub struct ContactElement {
    base: Point,
    normal: Point,
    orientation: Orientation,
}

impl ContactElement {
    pub fn new(base: Point, normal: Point, orientation: Orientation) -> Result<ContactElement> {
        assert_eq!(base.dim(), normal.dim(), "dimension mismatch");
        if !normal.is_proper() {
            return Err(Error::ImproperNormal);
        }
        Ok(ContactElement {
            base,
            normal,
            orientation,
        })
    }

    /// The element `M(b) ∩ A` of a sphere through `b`. `side` states whether
    /// the sphere is to be read as touching from the inside; the positive
    /// direction then points away from (resp. toward) the center.
    pub fn from_sphere(sphere: &Sphere, b: &Point, side: Side) -> Result<ContactElement> {
        if !sphere.contains(b) {
            return Err(Error::NotOnFigure);
        }
        let normal = b.sub(sphere.center());
        let orientation = match side {
            Side::Inside => Orientation::Positive,
            Side::Outside => Orientation::Negative,
        };
        ContactElement::new(b.clone(), normal, orientation)
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Set membership: a neighbour of the base annihilated by the normal form.
    pub fn contains(&self, x: &Point) -> bool {
        neighbour(&self.base, x) && x.sub(&self.base).inner(&self.normal).is_zero()
    }

    /// Equality as transversally oriented sets: same base, normals related by
    /// an invertible factor, orientations matching the factor's sign.
    pub fn same_oriented(&self, other: &ContactElement) -> Result<bool> {
        if self.base != other.base {
            return Ok(false);
        }
        let pivot = self
            .normal
            .coords()
            .iter()
            .position(NilElement::is_invertible)
            .ok_or(Error::ImproperNormal)?;
        if !other.normal.coord(pivot).is_invertible() {
            return Ok(false);
        }
        let factor =
            other.normal.coord(pivot) * &self.normal.coord(pivot).inverse().expect("invertible");
        for (u, v) in self.normal.coords().iter().zip(other.normal.coords()) {
            if !(v - u * &factor).is_zero() {
                return Ok(false);
            }
        }
        let same_direction = factor.pure_sign() == Sign::Positive;
        Ok(if same_direction {
            self.orientation == other.orientation
        } else {
            self.orientation != other.orientation
        })
    }

    /// A canonical inside-touching sphere representing the element: center
    /// one normal-length inward, radius `|normal|`.
    pub fn representative_sphere(&self) -> Result<Sphere> {
        let radius = self.normal.norm_sq().sqrt()?;
        let inward = self.normal.scale(&self.orientation.factor());
        let center = self.base.sub(&inward);
        Sphere::new(center, radius)
    }
}

/// `c ⊥ P`: all generic elements of the contact set are equidistant from
/// `c`. Decided by cancelling a generic vector constrained to the element.
pub fn orthogonal(c: &Point, p: &ContactElement, table: &mut BatchTable) -> Result<bool> {
    if !apart(c, &p.base) {
        return Err(Error::NotApart);
    }
    let (batch, d) = constrained_probe(table, p.normal.coords())?;
    let shifted = p.base.add(&Point::new(d));
    let expr = c.sub(&shifted).norm_sq() - c.sub(&p.base).norm_sq();
    let dec = table.kl_cancel(&expr, batch)?;
    Ok(dec.vanishes_generically())
}

/// The wavefront point `P ⊢ s`: distance `s` from the base along the
/// oriented unit normal.
pub fn front_step(p: &ContactElement, s: &NilElement) -> Result<Point> {
    if s.pure_sign() != Sign::Positive {
        return Err(Error::OutOfRange("wavefront distance must be positive"));
    }
    let length = p.normal.norm_sq().sqrt()?;
    let factor = s * &p.orientation.factor() * length.inverse().expect("proper normal");
    Ok(p.base.add(&p.normal.scale(&factor)))
}

/// The flowed contact element `P ⊨ s`: base moved to `P ⊢ s`, radial
/// direction and orientation preserved. Its focus is `P ⊢ s`.
pub fn flow_step(p: &ContactElement, s: &NilElement) -> Result<ContactElement> {
    let base = front_step(p, s)?;
    ContactElement::new(base, p.normal.clone(), p.orientation)
}

/// A hypersurface sampled as finitely many oriented contact elements.
#[derive(Clone, Debug)]
pub struct OrientedHypersurface {
    samples: Vec<ContactElement>,
}

impl OrientedHypersurface {
    pub fn new(samples: Vec<ContactElement>) -> OrientedHypersurface {
        OrientedHypersurface { samples }
    }

    pub fn samples(&self) -> &[ContactElement] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample a sphere at `count` exact rational directions, outward normals,
    /// positive orientation outward.
    pub fn from_sphere_samples(sphere: &Sphere, count: usize) -> Result<OrientedHypersurface> {
        let dirs = rational_unit_directions(sphere.dim(), count);
        let samples = dirs
            .into_iter()
            .map(|u| {
                let offset = u.scale(sphere.radius());
                let base = sphere.center().add(&offset);
                ContactElement::new(base, offset, Orientation::Positive)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrientedHypersurface::new(samples))
    }

    /// Sample a line (a 2D hyperplane) at `count` equally spaced points,
    /// oriented along the plane normal.
    pub fn from_line_samples(line: &Hyperplane, count: usize) -> Result<OrientedHypersurface> {
        if line.dim() != 2 {
            return Err(Error::OutOfRange("line sampling requires dimension 2"));
        }
        let n = line.normal();
        let along = Point::new(vec![-n.coord(1).clone(), n.coord(0).clone()]);
        let samples = (0..count)
            .map(|k| {
                let t = NilElement::from_int(2 * k as i64 - count as i64);
                let base = line.basepoint().add(&along.scale(&t));
                ContactElement::new(base, n.clone(), Orientation::Positive)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrientedHypersurface::new(samples))
    }
}

/// Exact unit vectors from rational stereographic parameters: distinct
/// parameters give distinct directions and every coordinate stays rational.
pub fn stereographic_direction(params: &[BigRational]) -> Point {
    let dim = params.len() + 1;
    assert!(dim >= 2, "need at least one parameter");
    let norm_sq: BigRational = params.iter().map(|t| t * t).sum();
    let denom = BigRational::from_integer(1.into()) + &norm_sq;
    let mut coords: Vec<NilElement> = params
        .iter()
        .map(|t| {
            let c = BigRational::from_integer(2.into()) * t / &denom;
            NilElement::from_scalar(Scalar::from_big_rational(c))
        })
        .collect();
    let last = (BigRational::from_integer(1.into()) - &norm_sq) / &denom;
    coords.push(NilElement::from_scalar(Scalar::from_big_rational(last)));
    Point::new(coords)
}

/// A deterministic spread of `count` distinct exact unit directions.
pub fn rational_unit_directions(dim: usize, count: usize) -> Vec<Point> {
    (0..count)
        .map(|k| {
            // distinct half-integer parameters, symmetric around zero
            let t = BigRational::new((2 * k as i64 + 1 - count as i64).into(), 2.into());
            let mut params = vec![BigRational::from_integer(0.into()); dim - 1];
            params[0] = t;
            stereographic_direction(&params)
        })
        .collect()
}

/// Indices of the samples whose contact element `x` is orthogonal to.
pub fn feet_on_surface(
    x: &Point,
    surface: &OrientedHypersurface,
    table: &mut BatchTable,
) -> Result<Vec<usize>> {
    let mut feet = Vec::new();
    for (i, sample) in surface.samples.iter().enumerate() {
        if orthogonal(x, sample, table)? {
            feet.push(i);
        }
    }
    Ok(feet)
}

/// The parallel surface `B ⊢ s`: every sample flowed by `s`. Verifies, per
/// sample, the foot-uniqueness assumption (the flowed point may have no other
/// foot among the samples) and the envelope property (the sphere `S(b, s)`
/// touches the flowed element's representative sphere at the flowed point).
pub fn parallel_surface(
    surface: &OrientedHypersurface,
    s: &NilElement,
    table: &mut BatchTable,
) -> Result<OrientedHypersurface> {
    let mut flowed = Vec::with_capacity(surface.len());
    for (i, sample) in surface.samples.iter().enumerate() {
        let front = front_step(sample, s)?;
        let feet = feet_on_surface(&front, surface, table)?;
        match feet.as_slice() {
            [only] if *only == i => {}
            [.., last] if feet.contains(&i) => {
                let other = if *last != i { *last } else { feet[0] };
                return Err(Error::FootNotUnique { sample: i, other });
            }
            _ => {
                return Err(Error::FootNotUnique {
                    sample: i,
                    other: i,
                })
            }
        }
        let wave = Sphere::new(sample.base().clone(), s.clone())?;
        let inflated = sample.representative_sphere()?.inflate(s)?;
        if !touches(
            &Figure::from(wave),
            &Figure::from(inflated),
            &front,
            table,
        )? {
            return Err(Error::NotTouching(
                "wavefront sphere fails to touch the flowed element",
            ));
        }
        flowed.push(flow_step(sample, s)?);
    }
    Ok(OrientedHypersurface::new(flowed))
}

/// Per-sample outcome of the sphere envelope verification.
#[derive(Debug, Clone)]
pub struct EnvelopeRecord {
    /// For each sampled `b` on the inner sphere: does `S(b, s)` touch the
    /// outer sphere at the radially extrapolated point?
    pub forward: Vec<bool>,
    /// For each sampled `c` on the outer sphere: does the interpolated foot
    /// lie on the inner sphere and extrapolate back to `c`?
    pub converse: Vec<bool>,
}

impl EnvelopeRecord {
    pub fn all_pass(&self) -> bool {
        self.forward.iter().all(|&x| x) && self.converse.iter().all(|&x| x)
    }
}

/// The sphere-envelope statement: the spheres `S(b, s)`, `b` ranging over
/// `S(a, r)`, envelope exactly `S(a, r + s)`, touching at the radial points,
/// with the correspondence bijective via interpolation.
pub fn sphere_envelope(
    center: &Point,
    r: &NilElement,
    s: &NilElement,
    count: usize,
    table: &mut BatchTable,
) -> Result<EnvelopeRecord> {
    let inner = Sphere::new(center.clone(), r.clone())?;
    let outer = Sphere::new(center.clone(), r + s)?;
    let dirs = rational_unit_directions(center.dim(), count);

    let mut forward = Vec::with_capacity(count);
    for u in &dirs {
        let b = center.add(&u.scale(r));
        let wave = Sphere::new(b.clone(), s.clone())?;
        let touch_point = extrapolate(center, &b, s)?;
        let ok = wave.contains(&touch_point)
            && outer.contains(&touch_point)
            && touches(
                &Figure::from(wave),
                &Figure::Sphere(outer.clone()),
                &touch_point,
                table,
            )?;
        forward.push(ok);
    }

    let mut converse = Vec::with_capacity(count);
    for u in &dirs {
        let c = center.add(&u.scale(outer.radius()));
        let b = interpolate(center, &c, s)?;
        let ok = inner.contains(&b) && extrapolate(center, &b, s)? == c;
        converse.push(ok);
    }

    Ok(EnvelopeRecord { forward, converse })
}

/// United position: each base lies in the other contact set (which includes
/// the bases being neighbours).
pub fn united_position(p: &ContactElement, q: &ContactElement) -> bool {
    p.contains(q.base()) && q.contains(p.base())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dist;

    fn pt(coords: &[i64]) -> Point {
        Point::from_ints(coords)
    }

    fn nil(n: i64) -> NilElement {
        NilElement::from_int(n)
    }

    fn sphere(center: &[i64], radius: i64) -> Sphere {
        Sphere::new(pt(center), nil(radius)).unwrap()
    }

    #[test]
    fn contact_element_from_sphere() {
        let a = sphere(&[0, 0], 1);
        let p = ContactElement::from_sphere(&a, &pt(&[1, 0]), Side::Inside).unwrap();
        assert_eq!(p.base(), &pt(&[1, 0]));
        assert_eq!(p.normal(), &pt(&[1, 0]));
        assert_eq!(p.orientation(), Orientation::Positive);

        let q = ContactElement::from_sphere(&a, &pt(&[0, 1]), Side::Inside).unwrap();
        assert_eq!(q.normal(), &pt(&[0, 1]));

        assert!(matches!(
            ContactElement::from_sphere(&a, &pt(&[2, 0]), Side::Inside),
            Err(Error::NotOnFigure)
        ));
    }

    #[test]
    fn internally_touching_spheres_give_the_same_element() {
        // S((0,-1),1) and S((0,-2),2) touch internally at the origin
        let s1 = sphere(&[0, -1], 1);
        let s2 = sphere(&[0, -2], 2);
        let b = pt(&[0, 0]);
        let p1 = ContactElement::from_sphere(&s1, &b, Side::Inside).unwrap();
        let p2 = ContactElement::from_sphere(&s2, &b, Side::Inside).unwrap();
        assert!(p1.same_oriented(&p2).unwrap());
        // read from the outside, orientation flips
        let p3 = ContactElement::from_sphere(&s1, &b, Side::Outside).unwrap();
        assert!(!p1.same_oriented(&p3).unwrap());
    }

    #[test]
    fn orthogonality_examples() {
        let mut table = BatchTable::new();
        let p = ContactElement::new(pt(&[0, 0]), pt(&[0, 1]), Orientation::Positive).unwrap();
        assert!(orthogonal(&pt(&[0, 3]), &p, &mut table).unwrap());
        assert!(!orthogonal(&pt(&[1, 3]), &p, &mut table).unwrap());
        assert!(matches!(
            orthogonal(&pt(&[0, 0]), &p, &mut table),
            Err(Error::NotApart)
        ));
    }

    #[test]
    fn front_step_is_representative_independent() {
        let p = ContactElement::new(pt(&[0, 0]), pt(&[0, 1]), Orientation::Positive).unwrap();
        assert_eq!(front_step(&p, &nil(2)).unwrap(), pt(&[0, 2]));

        // two distinct inside representatives give the same front point
        let s1 = sphere(&[0, -1], 1);
        let s2 = sphere(&[0, -2], 2);
        let b = pt(&[0, 0]);
        for rep in [&s1, &s2] {
            let elem = ContactElement::from_sphere(rep, &b, Side::Inside).unwrap();
            assert_eq!(front_step(&elem, &nil(2)).unwrap(), pt(&[0, 2]));
            // and it matches radial extrapolation through the representative
            assert_eq!(
                extrapolate(rep.center(), &b, &nil(2)).unwrap(),
                pt(&[0, 2])
            );
        }

        // flipping orientation mirrors the step
        let flipped = ContactElement::new(pt(&[0, 0]), pt(&[0, 1]), Orientation::Negative).unwrap();
        assert_eq!(front_step(&flipped, &nil(2)).unwrap(), pt(&[0, -2]));
    }

    #[test]
    fn front_step_normalizes_the_normal() {
        // an unnormalized normal of irrational length still steps exactly s
        let p = ContactElement::new(pt(&[0, 0]), pt(&[1, 1]), Orientation::Positive).unwrap();
        let stepped = front_step(&p, &nil(3)).unwrap();
        assert_eq!(dist(&pt(&[0, 0]), &stepped).unwrap(), nil(3));
    }

    #[test]
    fn flow_semigroup() {
        let p = ContactElement::new(pt(&[0, 0]), pt(&[0, 1]), Orientation::Positive).unwrap();
        let one_then_two = flow_step(&flow_step(&p, &nil(1)).unwrap(), &nil(2)).unwrap();
        let three = flow_step(&p, &nil(3)).unwrap();
        assert!(one_then_two.same_oriented(&three).unwrap());
        // focus of the flowed element is the front point
        assert_eq!(three.base(), &front_step(&p, &nil(3)).unwrap());
        assert_eq!(three.orientation(), p.orientation());
    }

    #[test]
    fn inflation_preserves_internal_touching() {
        use crate::geometry::touching_point_internal;
        let a = sphere(&[0, 0], 3);
        let b = sphere(&[1, 0], 2);
        let c = touching_point_internal(&a, &b).unwrap();
        assert_eq!(c, pt(&[3, 0]));

        let t = nil(1);
        let a_inflated = a.inflate(&t).unwrap();
        let b_inflated = b.inflate(&t).unwrap();
        let c_inflated = touching_point_internal(&a_inflated, &b_inflated).unwrap();
        assert_eq!(c_inflated, pt(&[4, 0]));
        // the chain: a ▷_{s+t} b = b ▷_t c
        assert_eq!(
            extrapolate(&pt(&[0, 0]), &pt(&[1, 0]), &nil(3)).unwrap(),
            c_inflated
        );
        assert_eq!(extrapolate(&pt(&[1, 0]), &c, &nil(1)).unwrap(), c_inflated);

        // external touching is NOT preserved by plain inflation
        use crate::geometry::touching_point_external;
        let e1 = sphere(&[0, 0], 2).inflate(&t).unwrap();
        let e2 = sphere(&[3, 0], 1).inflate(&t).unwrap();
        assert!(matches!(
            touching_point_external(&e1, &e2),
            Err(Error::NotTouching(_))
        ));
    }

    #[test]
    fn feet_on_a_sampled_circle() {
        let mut table = BatchTable::new();
        let circle = OrientedHypersurface::from_sphere_samples(&sphere(&[0, 0], 1), 12).unwrap();
        assert_eq!(circle.len(), 12);
        // the center has every sample as a foot
        let feet = feet_on_surface(&pt(&[0, 0]), &circle, &mut table).unwrap();
        assert_eq!(feet.len(), 12);
        // a point on one outward normal has exactly that foot
        let base = circle.samples()[3].base().clone();
        let outside = base.add(&circle.samples()[3].normal().scale(&nil(2)));
        let feet3 = feet_on_surface(&outside, &circle, &mut table).unwrap();
        assert_eq!(feet3, vec![3]);
    }

    #[test]
    fn parallel_surface_of_circle_and_line() {
        let mut table = BatchTable::new();
        let circle = OrientedHypersurface::from_sphere_samples(&sphere(&[0, 0], 1), 8).unwrap();
        let outer = parallel_surface(&circle, &nil(1), &mut table).unwrap();
        let big = sphere(&[0, 0], 2);
        for sample in outer.samples() {
            assert!(big.contains(sample.base()));
        }
        // pointwise semigroup: B ⊢ (s+t) = (B ⊢ s) ⊢ t
        let two_steps = parallel_surface(&outer, &nil(2), &mut table).unwrap();
        let direct = parallel_surface(&circle, &nil(3), &mut table).unwrap();
        for (x, y) in two_steps.samples().iter().zip(direct.samples()) {
            assert!(x.same_oriented(y).unwrap());
        }

        // a line translates
        let line = Hyperplane::new(pt(&[0, 0]), pt(&[0, 1])).unwrap();
        let sampled = OrientedHypersurface::from_line_samples(&line, 5).unwrap();
        let moved = parallel_surface(&sampled, &nil(2), &mut table).unwrap();
        let target = Hyperplane::new(pt(&[0, 2]), pt(&[0, 1])).unwrap();
        for sample in moved.samples() {
            assert!(target.contains(sample.base()));
        }
    }

    #[test]
    fn sphere_envelope_checks() {
        let mut table = BatchTable::new();
        let record = sphere_envelope(&pt(&[0, 0]), &nil(2), &nil(1), 8, &mut table).unwrap();
        assert_eq!(record.forward.len(), 8);
        assert!(record.all_pass());

        // degenerate single sample still verifies
        let single = sphere_envelope(&pt(&[0, 0]), &nil(2), &nil(1), 1, &mut table).unwrap();
        assert!(single.all_pass());
    }

    #[test]
    fn radial_bijection_example() {
        // c = (3,0) on the outer sphere pulls back to b = (2,0) and forward again
        let c = pt(&[3, 0]);
        let b = interpolate(&pt(&[0, 0]), &c, &nil(1)).unwrap();
        assert_eq!(b, pt(&[2, 0]));
        assert_eq!(extrapolate(&pt(&[0, 0]), &b, &nil(1)).unwrap(), c);
    }

    #[test]
    fn united_position_examples() {
        let mut table = BatchTable::new();
        let (_, d) = table.fresh_batch(1);
        let p = ContactElement::new(pt(&[0, 0]), pt(&[0, 1]), Orientation::Positive).unwrap();
        // reflexive
        assert!(united_position(&p, &p));
        // adjacent monadic sample along the element
        let shifted_base = Point::new(vec![d[0].clone(), NilElement::zero()]);
        let q = ContactElement::new(shifted_base, pt(&[0, 1]), Orientation::Positive).unwrap();
        assert!(united_position(&p, &q));
        // apart bases are never united
        let far = ContactElement::new(pt(&[5, 0]), pt(&[0, 1]), Orientation::Positive).unwrap();
        assert!(!united_position(&p, &far));
    }
}

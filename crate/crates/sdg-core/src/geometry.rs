//! Coordinate geometry over the nilpotent-extended line.
//!
//! Points of `R^n` carry [`NilElement`] coordinates. Two points are *apart*
//! when their difference has an invertible coordinate and *neighbours* when
//! all pairwise products of coordinate differences vanish; distance is only
//! defined on pairs of apart points. Spheres and hyperplanes are the figure
//! classes; what it means for two figures to *touch* at a point is that a
//! generic monad element satisfies the same linear membership condition for
//! both, and that condition is extracted exactly by cancelling a fresh
//! generator batch.

use crate::error::{Error, Result};
use crate::nilpotent::{BatchId, BatchTable, NilElement};
use crate::scalar::Sign;

/// A point of `R^n` (also used for displacement vectors).
#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    coords: Vec<NilElement>,
}

impl Point {
    pub fn new(coords: Vec<NilElement>) -> Point {
        assert!(!coords.is_empty(), "zero-dimensional point");
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point::new(coords.iter().map(|&c| NilElement::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[NilElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &NilElement {
        &self.coords[i]
    }

    pub fn add(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: &NilElement) -> Point {
        Point::new(self.coords.iter().map(|c| c * factor).collect())
    }

    pub fn inner(&self, other: &Point) -> NilElement {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(NilElement::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> NilElement {
        self.inner(self)
    }

    /// A proper vector has at least one invertible coordinate.
    pub fn is_proper(&self) -> bool {
        self.coords.iter().any(NilElement::is_invertible)
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `x # y`: the difference is a proper vector.
pub fn apart(x: &Point, y: &Point) -> bool {
    y.sub(x).is_proper()
}

/// `x ~ y`: all pairwise products of coordinate differences vanish.
pub fn neighbour(x: &Point, y: &Point) -> bool {
    let d = y.sub(x);
    for i in 0..d.dim() {
        for j in i..d.dim() {
            if !(d.coord(i) * d.coord(j)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Exact distance; defined only on apart points.
pub fn dist(x: &Point, y: &Point) -> Result<NilElement> {
    if !apart(x, y) {
        return Err(Error::NotApart);
    }
    y.sub(x).norm_sq().sqrt()
}

#[derive(Clone, Debug)]
pub struct Sphere {
    center: Point,
    radius: NilElement,
}

impl Sphere {
    pub fn new(center: Point, radius: NilElement) -> Result<Sphere> {
        if radius.pure_sign() != Sign::Positive {
            return Err(Error::InvalidRadius);
        }
        Ok(Sphere { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &NilElement {
        &self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Membership via the squared form `|p - a|² - r²`; exact, and avoids
    /// introducing square roots.
    pub fn contains(&self, p: &Point) -> bool {
        self.membership_expr(p).is_zero()
    }

    fn membership_expr(&self, p: &Point) -> NilElement {
        p.sub(&self.center).norm_sq() - &self.radius * &self.radius
    }

    /// Same center, radius increased by `t` (which must have positive pure part).
    pub fn inflate(&self, t: &NilElement) -> Result<Sphere> {
        if t.pure_sign() != Sign::Positive {
            return Err(Error::OutOfRange("inflation amount must be positive"));
        }
        Sphere::new(self.center.clone(), &self.radius + t)
    }
}

#[derive(Clone, Debug)]
pub struct Hyperplane {
    basepoint: Point,
    normal: Point,
}

impl Hyperplane {
    pub fn new(basepoint: Point, normal: Point) -> Result<Hyperplane> {
        assert_eq!(basepoint.dim(), normal.dim(), "dimension mismatch");
        if !normal.is_proper() {
            return Err(Error::ImproperNormal);
        }
        Ok(Hyperplane { basepoint, normal })
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.basepoint.dim()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.membership_expr(p).is_zero()
    }

    fn membership_expr(&self, p: &Point) -> NilElement {
        p.sub(&self.basepoint).inner(&self.normal)
    }
}

/// A figure whose monad intersections are linear conditions.
#[derive(Clone, Debug)]
pub enum Figure {
    Sphere(Sphere),
    Hyperplane(Hyperplane),
}

impl Figure {
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Figure::Sphere(s) => s.contains(p),
            Figure::Hyperplane(h) => h.contains(p),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Figure::Sphere(s) => s.dim(),
            Figure::Hyperplane(h) => h.dim(),
        }
    }

    fn membership_expr(&self, p: &Point) -> NilElement {
        match self {
            Figure::Sphere(s) => s.membership_expr(p),
            Figure::Hyperplane(h) => h.membership_expr(p),
        }
    }
}

impl From<Sphere> for Figure {
    fn from(s: Sphere) -> Figure {
        Figure::Sphere(s)
    }
}

impl From<Hyperplane> for Figure {
    fn from(h: Hyperplane) -> Figure {
        Figure::Hyperplane(h)
    }
}

/// A generic monad element: one fresh batch of generators used as the
/// coordinates of an arbitrary first-order infinitesimal vector.
pub struct GenericVector {
    batch: BatchId,
    point: Point,
}

impl GenericVector {
    pub fn fresh(table: &mut BatchTable, dim: usize) -> GenericVector {
        let (batch, gens) = table.fresh_batch(dim);
        GenericVector {
            batch,
            point: Point::new(gens),
        }
    }

    pub fn batch(&self) -> BatchId {
        self.batch
    }

    pub fn as_point(&self) -> &Point {
        &self.point
    }
}

/// The linear form cutting out `M(b) ∩ F` on a generic monad element:
/// membership of `b + d` is equivalent to `Σ cᵢ·dᵢ = 0`, and the returned
/// vector is `c`. For a sphere the form is parallel to `b - a`, for a
/// hyperplane it is the normal.
pub fn monad_condition(
    figure: &Figure,
    base: &Point,
    probe: &GenericVector,
    table: &BatchTable,
) -> Result<Vec<NilElement>> {
    if !figure.contains(base) {
        return Err(Error::NotOnFigure);
    }
    let shifted = base.add(probe.as_point());
    let expr = figure.membership_expr(&shifted);
    let dec = table.kl_cancel(&expr, probe.batch)?;
    debug_assert!(dec.constant.is_zero());
    Ok(dec.coefficients)
}

/// Whether `v = λ·u` for some factor λ (containment of the kernels of the two
/// linear forms on the monad). Requires `u` to have an invertible entry.
pub fn proportional_some_factor(u: &[NilElement], v: &[NilElement]) -> Result<bool> {
    let pivot = u
        .iter()
        .position(NilElement::is_invertible)
        .ok_or(Error::Degenerate("linear form has no invertible coefficient"))?;
    let factor = &v[pivot] * &u[pivot].inverse().expect("pivot invertible");
    Ok(u.iter()
        .zip(v)
        .all(|(ui, vi)| (vi - ui * &factor).is_zero()))
}

/// Whether `v = λ·u` with λ invertible (equality of the monad subsets cut
/// out by the two forms). Over a local ring the factor must be a unit: a
/// merely nilpotent multiple has a strictly larger kernel.
pub fn proportional_by_invertible(u: &[NilElement], v: &[NilElement]) -> Result<bool> {
    let pivot = u
        .iter()
        .position(NilElement::is_invertible)
        .ok_or(Error::Degenerate("linear form has no invertible coefficient"))?;
    if !v[pivot].is_invertible() {
        return Ok(false);
    }
    proportional_some_factor(u, v)
}

/// Do `a` and `b` touch at `z`, i.e. is `M(z) ∩ A = M(z) ∩ B`?
pub fn touches(a: &Figure, b: &Figure, at: &Point, table: &mut BatchTable) -> Result<bool> {
    if !a.contains(at) || !b.contains(at) {
        return Err(Error::NotOnFigure);
    }
    let probe = GenericVector::fresh(table, at.dim());
    let ca = monad_condition(a, at, &probe, table)?;
    let cb = monad_condition(b, at, &probe, table)?;
    proportional_by_invertible(&ca, &cb)
}

/// Touching point of externally touching spheres: requires the center
/// distance to equal the sum of the radii (checked in squared form), and
/// returns `a + (r/(r+s))·(c - a)`.
pub fn touching_point_external(a: &Sphere, c: &Sphere) -> Result<Point> {
    if !apart(a.center(), c.center()) {
        return Err(Error::NotApart);
    }
    let sum = a.radius() + c.radius();
    let gap = c.center().sub(a.center());
    if !(gap.norm_sq() - &sum * &sum).is_zero() {
        return Err(Error::NotTouching(
            "center distance differs from the sum of the radii",
        ));
    }
    let factor = a.radius() * &sum.inverse().expect("sum of radii is invertible");
    Ok(a.center().add(&gap.scale(&factor)))
}

/// Touching point of internally touching spheres `A = S(a, r+s)`,
/// `B = S(b, s)` with `ab = r`: returns `a + ((r+s)/r)·(b - a)`.
pub fn touching_point_internal(a: &Sphere, b: &Sphere) -> Result<Point> {
    if !apart(a.center(), b.center()) {
        return Err(Error::NotApart);
    }
    let diff = a.radius() - b.radius();
    if diff.pure_sign() != Sign::Positive {
        return Err(Error::NotTouching(
            "first sphere must be strictly larger for internal touching",
        ));
    }
    let gap = b.center().sub(a.center());
    if !(gap.norm_sq() - &diff * &diff).is_zero() {
        return Err(Error::NotTouching(
            "center distance differs from the difference of the radii",
        ));
    }
    let factor = a.radius() * &diff.inverse().expect("difference is invertible");
    Ok(a.center().add(&gap.scale(&factor)))
}

/// Which monad subset a focusedness question is about.
pub enum MonadRegion<'a> {
    /// The whole monad `M(b)`.
    Full,
    /// `M(b) ∩ F` for a figure through `b`.
    OnFigure(&'a Figure),
}

/// Generic-vector coordinates constrained to the kernel of `form`: the pivot
/// coordinate is eliminated, the rest are fresh generators. This is how a
/// quantifier over the monad elements of a figure slice is executed.
pub fn constrained_probe(
    table: &mut BatchTable,
    form: &[NilElement],
) -> Result<(BatchId, Vec<NilElement>)> {
    let n = form.len();
    let pivot = form
        .iter()
        .position(NilElement::is_invertible)
        .ok_or(Error::Degenerate("monad condition has no invertible coefficient"))?;
    let (batch, gens) = table.fresh_batch(n - 1);
    let pivot_inv = form[pivot].inverse().expect("pivot invertible");
    let mut coords = Vec::with_capacity(n);
    let mut free = gens.into_iter();
    let mut pivot_value = NilElement::zero();
    for (i, c) in form.iter().enumerate() {
        if i == pivot {
            coords.push(NilElement::zero()); // placeholder
        } else {
            let g = free.next().expect("one generator per free coordinate");
            pivot_value = pivot_value - c * &g;
            coords.push(g);
        }
    }
    coords[pivot] = pivot_value * &pivot_inv;
    Ok((batch, coords))
}

/// Is `M(b) ∩ F` (or the full monad) focused with focus `b`?
///
/// A candidate `x = b + e` must lie in the set and neighbour every generic
/// element `b + d` of it. Expanding `(eᵢ-dᵢ)(eⱼ-dⱼ) = 0` and cancelling first
/// the `d`-batch and then the `e`-batch yields a linear system over the
/// scenario algebra; the set is focused exactly when the system admits a full
/// set of invertible pivots, forcing `e = 0`.
pub fn is_focused(region: MonadRegion<'_>, base: &Point, table: &mut BatchTable) -> Result<bool> {
    let n = base.dim();
    let (e_batch, e_coords, d_batch, d_coords) = match region {
        MonadRegion::Full => {
            let (eb, e) = table.fresh_batch(n);
            let (db, d) = table.fresh_batch(n);
            (eb, e, db, d)
        }
        MonadRegion::OnFigure(figure) => {
            if !figure.contains(base) {
                return Err(Error::NotOnFigure);
            }
            let probe = GenericVector::fresh(table, n);
            let form = monad_condition(figure, base, &probe, table)?;
            let (eb, e) = constrained_probe(table, &form)?;
            let (db, d) = constrained_probe(table, &form)?;
            (eb, e, db, d)
        }
    };

    let free = table.batch_size(e_batch)? as usize;
    let mut rows: Vec<Vec<NilElement>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let expr = (&e_coords[i] - &d_coords[i]) * (&e_coords[j] - &d_coords[j]);
            let by_d = table.kl_cancel(&expr, d_batch)?;
            debug_assert!(by_d.constant.is_zero());
            for kappa in &by_d.coefficients {
                let by_e = table.kl_cancel(kappa, e_batch)?;
                debug_assert!(by_e.constant.is_zero());
                if by_e.coefficients.iter().any(|c| !c.is_zero()) {
                    rows.push(by_e.coefficients);
                }
            }
        }
    }
    Ok(forces_zero(rows, free))
}

/// Does the homogeneous system `M·e = 0` force `e = 0` over the local
/// algebra? Decided by Gaussian elimination with invertible pivots only.
fn forces_zero(mut rows: Vec<Vec<NilElement>>, cols: usize) -> bool {
    if cols == 0 {
        // no free coordinates: the candidate was already pinned
        return true;
    }
    for col in 0..cols {
        let Some(pivot_row) = rows.iter().position(|r| r[col].is_invertible()) else {
            return false;
        };
        let pivot = rows.swap_remove(pivot_row);
        let inv = pivot[col].inverse().expect("pivot invertible");
        for row in &mut rows {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for k in 0..cols {
                row[k] = &row[k] - &(&pivot[k] * &factor);
            }
        }
    }
    true
}

/// Orthogonal projection of `a` onto the hyperplane `u`. The projection must
/// be apart from `a` (i.e. `a` must not lie in the monad of the plane).
pub fn foot(a: &Point, u: &Hyperplane) -> Result<Point> {
    let n = u.normal();
    let offset = u.basepoint().sub(a).inner(n);
    if !offset.is_invertible() {
        return Err(Error::Degenerate(
            "point lies on (or infinitesimally close to) the hyperplane",
        ));
    }
    let n_sq = n.norm_sq();
    let t = &offset * &n_sq.inverse().expect("proper normal has invertible norm");
    Ok(a.add(&n.scale(&t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::BatchTable;

    fn pt(coords: &[i64]) -> Point {
        Point::from_ints(coords)
    }

    fn sphere(center: &[i64], radius: i64) -> Sphere {
        Sphere::new(pt(center), NilElement::from_int(radius)).unwrap()
    }

    #[test]
    fn apartness_examples() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        assert!(apart(&pt(&[0, 0]), &pt(&[3, 0])));
        let b = Point::new(vec![eps[0].clone(), NilElement::zero()]);
        assert!(!apart(&pt(&[0, 0]), &b));
        let c = Point::new(vec![
            NilElement::from_int(1) + &eps[0],
            NilElement::zero(),
        ]);
        assert!(apart(&pt(&[0, 0]), &c));
        // apartness and neighbourhood are incompatible
        assert!(neighbour(&pt(&[0, 0]), &b));
        assert!(!neighbour(&pt(&[0, 0]), &c));
    }

    #[test]
    fn neighbour_depends_on_batch_structure() {
        let mut table = BatchTable::new();
        let origin = pt(&[0, 0]);
        let (_, d) = table.fresh_batch(2);
        let same = Point::new(vec![d[0].clone(), d[1].clone()]);
        assert!(neighbour(&origin, &origin));
        assert!(neighbour(&origin, &same));

        let (_, e1) = table.fresh_batch(1);
        let (_, e2) = table.fresh_batch(1);
        let crossed = Point::new(vec![e1[0].clone(), e2[0].clone()]);
        assert!(!neighbour(&origin, &crossed));
    }

    #[test]
    fn distance_examples() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let a = pt(&[-3, 0]);
        let b = Point::new(vec![NilElement::zero(), eps[0].clone()]);
        // the height ε does not change the hypotenuse when ε² = 0
        assert_eq!(dist(&a, &b).unwrap(), NilElement::from_int(3));
        assert_eq!(
            dist(&pt(&[0, 0]), &pt(&[3, 4])).unwrap(),
            NilElement::from_int(5)
        );
        let c = Point::new(vec![
            NilElement::from_int(1) + &eps[0],
            NilElement::zero(),
        ]);
        assert_eq!(
            dist(&pt(&[0, 0]), &c).unwrap(),
            NilElement::from_int(1) + &eps[0]
        );
        // symmetry
        assert_eq!(dist(&b, &a).unwrap(), dist(&a, &b).unwrap());
        // not defined on non-apart pairs
        assert_eq!(dist(&pt(&[0, 0]), &b), Err(Error::NotApart));
    }

    #[test]
    fn sphere_and_hyperplane_membership() {
        let s = sphere(&[0, 0], 1);
        assert!(s.contains(&pt(&[0, 1])));
        assert!(!s.contains(&pt(&[1, 1])));

        let mut table = BatchTable::new();
        let (_, d) = table.fresh_batch(2);
        let s3 = sphere(&[0, 0, 1], 1);
        let p = Point::new(vec![d[0].clone(), d[1].clone(), NilElement::zero()]);
        assert!(s3.contains(&p));

        let h = Hyperplane::new(pt(&[0, 0]), pt(&[0, 1])).unwrap();
        assert!(h.contains(&pt(&[5, 0])));
        assert!(!h.contains(&pt(&[5, 1])));
    }

    #[test]
    fn monad_condition_vectors() {
        let mut table = BatchTable::new();
        let s = Figure::from(sphere(&[0, 0], 1));
        let b = pt(&[0, 1]);
        let probe = GenericVector::fresh(&mut table, 2);
        let c = monad_condition(&s, &b, &probe, &table).unwrap();
        let vertical = [NilElement::zero(), NilElement::from_int(1)];
        assert!(proportional_by_invertible(&c, &vertical).unwrap());

        let h = Figure::from(Hyperplane::new(pt(&[0, 0]), pt(&[0, 1])).unwrap());
        let probe2 = GenericVector::fresh(&mut table, 2);
        let ch = monad_condition(&h, &pt(&[0, 0]), &probe2, &table).unwrap();
        assert!(proportional_by_invertible(&ch, &vertical).unwrap());

        let s3 = Figure::from(sphere(&[0, 0, 1], 1));
        let probe3 = GenericVector::fresh(&mut table, 3);
        let c3 = monad_condition(&s3, &pt(&[0, 0, 0]), &probe3, &table).unwrap();
        let axis = [
            NilElement::zero(),
            NilElement::zero(),
            NilElement::from_int(1),
        ];
        assert!(proportional_by_invertible(&c3, &axis).unwrap());

        // asking at a point off the figure is a usage error
        let probe4 = GenericVector::fresh(&mut table, 2);
        assert!(matches!(
            monad_condition(&s, &pt(&[5, 5]), &probe4, &table),
            Err(Error::NotOnFigure)
        ));
    }

    #[test]
    fn touching_spheres_and_planes() {
        let mut table = BatchTable::new();
        let a = Figure::from(sphere(&[0, 0], 2));
        let c = Figure::from(sphere(&[3, 0], 1));
        assert!(touches(&a, &c, &pt(&[2, 0]), &mut table).unwrap());

        let wrong = Figure::from(sphere(&[0, 3], 1));
        assert!(matches!(
            touches(&a, &wrong, &pt(&[2, 0]), &mut table),
            Err(Error::NotOnFigure)
        ));

        let s3 = Figure::from(sphere(&[0, 0, 1], 1));
        let h3 = Figure::from(Hyperplane::new(pt(&[0, 0, 0]), pt(&[0, 0, 1])).unwrap());
        assert!(touches(&s3, &h3, &pt(&[0, 0, 0]), &mut table).unwrap());
    }

    #[test]
    fn external_touching_point() {
        let a = sphere(&[0, 0], 2);
        let c = sphere(&[3, 0], 1);
        assert_eq!(touching_point_external(&a, &c).unwrap(), pt(&[2, 0]));

        let a2 = sphere(&[0, 0], 3);
        let c2 = sphere(&[0, 5], 2);
        assert_eq!(touching_point_external(&a2, &c2).unwrap(), pt(&[0, 3]));

        let bad = sphere(&[3, 0], 1);
        let unit = sphere(&[0, 0], 1);
        assert!(matches!(
            touching_point_external(&unit, &bad),
            Err(Error::NotTouching(_))
        ));
    }

    #[test]
    fn internal_touching_point() {
        let a = sphere(&[0, 0], 3);
        let b = sphere(&[1, 0], 2);
        assert_eq!(touching_point_internal(&a, &b).unwrap(), pt(&[3, 0]));

        let a2 = sphere(&[0, 0], 2);
        let b2 = sphere(&[0, 1], 1);
        assert_eq!(touching_point_internal(&a2, &b2).unwrap(), pt(&[0, 2]));

        let concentric = sphere(&[0, 0], 1);
        assert_eq!(
            touching_point_internal(&a, &concentric),
            Err(Error::NotApart)
        );
    }

    #[test]
    fn monads_are_focused() {
        let mut table = BatchTable::new();
        assert!(is_focused(MonadRegion::Full, &pt(&[0, 0]), &mut table).unwrap());

        let h = Figure::from(Hyperplane::new(pt(&[0, 0]), pt(&[0, 1])).unwrap());
        assert!(is_focused(MonadRegion::OnFigure(&h), &pt(&[3, 0]), &mut table).unwrap());

        let s = Figure::from(sphere(&[0, 0], 1));
        assert!(is_focused(MonadRegion::OnFigure(&s), &pt(&[0, 1]), &mut table).unwrap());

        let s3 = Figure::from(sphere(&[0, 0, 1], 1));
        assert!(is_focused(MonadRegion::OnFigure(&s3), &pt(&[0, 0, 0]), &mut table).unwrap());
    }

    #[test]
    fn scaled_monad_slice_is_not_focused() {
        // the set {ε·x : x in R²} for one fixed ε: any two members are
        // neighbours, so no unique focus exists
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let (_, t) = table.fresh_batch(2);
        let member = |v: &Point| v.scale(&eps[0]);
        let generic = Point::new(vec![t[0].clone(), t[1].clone()]);
        let p = member(&pt(&[1, 0]));
        let q = member(&pt(&[0, 1]));
        // two distinct elements, each neighbouring the generic member ε·x
        assert_ne!(p, q);
        assert!(neighbour(&p, &member(&generic)));
        assert!(neighbour(&q, &member(&generic)));
    }

    #[test]
    fn foot_examples() {
        let xy = Hyperplane::new(pt(&[0, 0, 0]), pt(&[0, 0, 1])).unwrap();
        assert_eq!(foot(&pt(&[0, 0, 1]), &xy).unwrap(), pt(&[0, 0, 0]));

        let x_axis = Hyperplane::new(pt(&[0, 0]), pt(&[0, 1])).unwrap();
        assert_eq!(foot(&pt(&[3, 4]), &x_axis).unwrap(), pt(&[3, 0]));

        let diag = Hyperplane::new(pt(&[0, 0]), pt(&[1, 1])).unwrap();
        assert_eq!(foot(&pt(&[1, 1]), &diag).unwrap(), pt(&[0, 0]));

        // a point on the plane has no foot
        assert!(matches!(
            foot(&pt(&[2, 0]), &x_axis),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn red_herring_touching_set_smaller_than_intersection() {
        // (ε₁, ε₂, 0) with independent ε's lies on both the unit sphere
        // centred at (0,0,1) and the xy-plane, but is not a neighbour of the
        // touching point: the intersection exceeds the touching set.
        let mut table = BatchTable::new();
        let (_, e1) = table.fresh_batch(1);
        let (_, e2) = table.fresh_batch(1);
        let s = sphere(&[0, 0, 1], 1);
        let h = Hyperplane::new(pt(&[0, 0, 0]), pt(&[0, 0, 1])).unwrap();
        let p = Point::new(vec![e1[0].clone(), e2[0].clone(), NilElement::zero()]);
        assert!(s.contains(&p));
        assert!(h.contains(&p));
        assert!(!neighbour(&pt(&[0, 0, 0]), &p));
    }

    #[test]
    fn focusedness_with_infinitesimal_data() {
        // a sphere with nilpotent-perturbed radius, probed at a perturbed point
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let radius = NilElement::from_int(1) + &eps[0];
        let s = Sphere::new(pt(&[0, 0]), radius.clone()).unwrap();
        let b = Point::new(vec![radius.clone(), NilElement::zero()]);
        assert!(s.contains(&b));
        let fig = Figure::from(s);
        assert!(is_focused(MonadRegion::OnFigure(&fig), &b, &mut table).unwrap());
        // the tangent hyperplane at the perturbed point still touches
        let tangent = Hyperplane::new(b.clone(), b.clone()).unwrap();
        assert!(touches(&fig, &Figure::from(tangent), &b, &mut table).unwrap());
    }

    #[test]
    fn order_is_blind_to_infinitesimals() {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let x = NilElement::from_ratio(1, 3) + &eps[0];
        let y = NilElement::from_ratio(1, 2);
        assert_eq!((y - x).pure_sign(), Sign::Positive);
    }
}

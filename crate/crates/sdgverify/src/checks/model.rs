//! Model-level facts: monad focusedness, feet, chord orthogonality, the
//! sphere/hyperplane monad identity, and the two fixed regressions (the
//! obtuse-triangle picture and the non-clean touching set).

use std::time::Instant;

use sdg_core::contact::{orthogonal, ContactElement, Orientation};
use sdg_core::geometry::{
    dist, foot, is_focused, monad_condition, neighbour, proportional_by_invertible, touches,
    Figure, GenericVector, Hyperplane, MonadRegion, Point, Sphere,
};
use sdg_core::nilpotent::{BatchTable, NilElement};
use sdg_core::synthetic::collinear;

use super::CheckContext;
use crate::generate::ConfigGen;
use crate::report::{Recorder, VerificationRecord};

/// The obtuse-triangle regression: a = (-3,0), b' = (0,eps), c = (4,0).
pub(super) fn basic_picture(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "basic-picture";
    let mut rec = Recorder::new(id, ctx.seed);
    let started = Instant::now();
    let run = || -> Result<bool, String> {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let a = Point::from_ints(&[-3, 0]);
        let b = Point::from_ints(&[0, 0]);
        let b_wobbled = Point::new(vec![NilElement::zero(), eps[0].clone()]);
        let c = Point::from_ints(&[4, 0]);
        let left = dist(&a, &b_wobbled).map_err(|e| e.to_string())?;
        let right = dist(&b_wobbled, &c).map_err(|e| e.to_string())?;
        if left != NilElement::from_int(3) || right != NilElement::from_int(4) {
            return Ok(false);
        }
        let taut = sdg_core::synthetic::triangle_equality(&a, &b_wobbled, &c)
            .map_err(|e| e.to_string())?;
        let wobbled_bracket = collinear(&a, &b_wobbled, &c).map_err(|e| e.to_string())?;
        let straight_bracket = collinear(&a, &b, &c).map_err(|e| e.to_string())?;
        Ok(taut && !wobbled_bracket && straight_bracket)
    };
    let outcome = run();
    rec.expect_pass("regression", 0, started, outcome, || {
        "hypotenuse lengths 3 and 4, (ab'c) holds, [ab'c] fails, [abc] holds".to_string()
    });

    let started = Instant::now();
    let run_control = || -> Result<bool, String> {
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let a = Point::from_ints(&[-3, 0]);
        let b_wobbled = Point::new(vec![NilElement::zero(), eps[0].clone()]);
        let c = Point::from_ints(&[4, 0]);
        collinear(&a, &b_wobbled, &c).map_err(|e| e.to_string())
    };
    let outcome = run_control();
    rec.negative_control("negative-control", 1, started, outcome, || {
        "the wobbled middle must not satisfy the bracket".to_string()
    });
    rec.records
}

/// A sphere's monad slice at any of its points equals the slice of the
/// tangent hyperplane there.
pub(super) fn sphere_monad_hyperplane(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "model-sphere-monad-hyperplane";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let center = gen.point(ctx.dim);
            let u = gen.unit_direction(ctx.dim);
            let rho = gen.positive();
            let b = center.add(&u.scale(&rho));
            let sphere = Sphere::new(center.clone(), rho).map_err(|e| e.to_string())?;
            let tangent = Hyperplane::new(b.clone(), b.sub(&center)).map_err(|e| e.to_string())?;
            let mut table = BatchTable::new();
            let probe = GenericVector::fresh(&mut table, ctx.dim);
            let fig_s = Figure::from(sphere);
            let fig_h = Figure::from(tangent);
            let cs = monad_condition(&fig_s, &b, &probe, &table).map_err(|e| e.to_string())?;
            let ch = monad_condition(&fig_h, &b, &probe, &table).map_err(|e| e.to_string())?;
            let equal = proportional_by_invertible(&cs, &ch).map_err(|e| e.to_string())?;
            let touching = touches(&fig_s, &fig_h, &b, &mut table).map_err(|e| e.to_string())?;
            Ok(equal && touching)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "sphere and tangent hyperplane share the monad slice".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let center = gen.point(ctx.dim);
        let u = gen.unit_direction(ctx.dim);
        let rho = gen.positive();
        let b = center.add(&u.scale(&rho));
        let sphere = Sphere::new(center.clone(), rho).map_err(|e| e.to_string())?;
        // tilt the plane: add a perpendicular component to the normal
        let tilt = gen.perpendicular(&u).map_err(|e| e.to_string())?;
        let tilted =
            Hyperplane::new(b.clone(), b.sub(&center).add(&tilt)).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        touches(
            &Figure::from(sphere),
            &Figure::from(tilted),
            &b,
            &mut table,
        )
        .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a tilted plane does not share the sphere's monad slice".to_string()
    });
    rec.records
}

/// Monads are focused; the scaled subset `{eps*x}` is not.
pub(super) fn monad_focused(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "model-monad-focused";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let x = gen.point(ctx.dim);
            let mut table = BatchTable::new();
            if !is_focused(MonadRegion::Full, &x, &mut table).map_err(|e| e.to_string())? {
                return Ok(false);
            }
            // counterexample inside the monad: {eps*v}: every two members are
            // neighbours, including against a generic member, so uniqueness of
            // a focus fails
            let (_, eps) = table.fresh_batch(1);
            let (_, t) = table.fresh_batch(ctx.dim);
            let generic_member = Point::new(t).scale(&eps[0]);
            let p = gen.point(ctx.dim).scale(&eps[0]);
            let q = gen.point(ctx.dim).scale(&eps[0]);
            let all_neighbours = neighbour(&p, &generic_member)
                && neighbour(&q, &generic_member)
                && neighbour(&p, &q);
            let distinct = p != q;
            Ok(all_neighbours && distinct)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "full monads are focused; the scaled subset has no unique focus".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let x = gen.point(ctx.dim);
        let mut table = BatchTable::new();
        Ok(!is_focused(MonadRegion::Full, &x, &mut table).map_err(|e| e.to_string())?)
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "claiming the full monad is unfocused must fail".to_string()
    });
    rec.records
}

/// Feet: generic equidistance characterizes the orthogonal projection, and
/// the sphere through the point with that radius touches the plane there.
pub(super) fn foot_characterization(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "model-foot-characterization";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let basepoint = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let plane = Hyperplane::new(basepoint.clone(), v.clone()).map_err(|e| e.to_string())?;
            let t = gen.positive();
            let w = gen.perpendicular(&v).map_err(|e| e.to_string())?;
            // a point off the plane with a known offset
            let a = basepoint.add(&v.scale(&t)).add(&w);
            let f = foot(&a, &plane).map_err(|e| e.to_string())?;
            if !plane.contains(&f) {
                return Ok(false);
            }
            // a - f is parallel to the normal, by an invertible factor
            let rises = proportional_by_invertible(v.coords(), a.sub(&f).coords())
                .map_err(|e| e.to_string())?;
            if !rises {
                return Ok(false);
            }
            // generic equidistance at the foot, and its failure elsewhere
            let mut table = BatchTable::new();
            let at_foot = ContactElement::new(f.clone(), v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            if !orthogonal(&a, &at_foot, &mut table).map_err(|e| e.to_string())? {
                return Ok(false);
            }
            let elsewhere = f.add(&gen.perpendicular(&v).map_err(|e| e.to_string())?);
            let off_element = ContactElement::new(elsewhere, v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            if orthogonal(&a, &off_element, &mut table).map_err(|e| e.to_string())? {
                return Ok(false);
            }
            // the sphere through the foot touches the plane exactly there
            let radius = dist(&a, &f).map_err(|e| e.to_string())?;
            let sphere = Sphere::new(a.clone(), radius).map_err(|e| e.to_string())?;
            touches(
                &Figure::from(sphere),
                &Figure::from(plane),
                &f,
                &mut table,
            )
            .map_err(|e| e.to_string())
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "foot is the generic equidistance point and the touching point".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let basepoint = gen.point(ctx.dim);
        let v = gen.unit_direction(ctx.dim);
        let plane = Hyperplane::new(basepoint.clone(), v.clone()).map_err(|e| e.to_string())?;
        let a = basepoint.add(&v.scale(&gen.positive()));
        let f = foot(&a, &plane).map_err(|e| e.to_string())?;
        // claim a different plane point is also a foot
        let other = f.add(&gen.perpendicular(&v).map_err(|e| e.to_string())?);
        let mut table = BatchTable::new();
        let off_element =
            ContactElement::new(other, v, Orientation::Positive).map_err(|e| e.to_string())?;
        orthogonal(&a, &off_element, &mut table).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "no second plane point is generically equidistant".to_string()
    });
    rec.records
}

/// Points on two spheres span a chord orthogonal to the line of centers.
pub(super) fn chord_orthogonality(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "model-chord-orthogonality";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let x = gen.point(ctx.dim);
            let y = gen.point_apart(ctx.dim, &[&x]).map_err(|e| e.to_string())?;
            let chord = y.sub(&x);
            let w = gen.perpendicular(&chord).map_err(|e| e.to_string())?;
            let mid = x.add(&y.sub(&x).scale(&NilElement::from_ratio(1, 2)));
            let t1 = gen.positive();
            let t2 = -(&t1 + gen.positive());
            let a = mid.add(&w.scale(&t1));
            let b = mid.add(&w.scale(&t2));
            // both centers are equidistant from x and y by construction
            let ra = dist(&a, &x).map_err(|e| e.to_string())?;
            let rb = dist(&b, &x).map_err(|e| e.to_string())?;
            let sphere_a = Sphere::new(a.clone(), ra).map_err(|e| e.to_string())?;
            let sphere_b = Sphere::new(b.clone(), rb).map_err(|e| e.to_string())?;
            let on_both = sphere_a.contains(&x)
                && sphere_a.contains(&y)
                && sphere_b.contains(&x)
                && sphere_b.contains(&y);
            let orthogonal_chord = chord.inner(&a.sub(&b)).is_zero();
            Ok(on_both && orthogonal_chord)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "the chord is orthogonal to the center line".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let x = gen.point(ctx.dim);
        let y = gen.point_apart(ctx.dim, &[&x]).map_err(|e| e.to_string())?;
        let chord = y.sub(&x);
        let w = gen.perpendicular(&chord).map_err(|e| e.to_string())?;
        let mid = x.add(&y.sub(&x).scale(&NilElement::from_ratio(1, 2)));
        let a = mid.add(&w.scale(&gen.positive()));
        // second center displaced off the bisector
        let b = mid.add(&chord);
        Ok(chord.inner(&a.sub(&b)).is_zero())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a center off the bisector breaks the orthogonality".to_string()
    });
    rec.records
}

/// Sphere-with-hyperplane touching is focused, with the foot as the point.
pub(super) fn focused_touching_model(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "model-focused-touching";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let center = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let rho = gen.positive();
            let b = center.add(&v.scale(&rho));
            let sphere = Sphere::new(center.clone(), rho).map_err(|e| e.to_string())?;
            let plane = Hyperplane::new(b.clone(), v.clone()).map_err(|e| e.to_string())?;
            let mut table = BatchTable::new();
            let fig_s = Figure::from(sphere);
            let fig_h = Figure::from(plane.clone());
            let touching = touches(&fig_s, &fig_h, &b, &mut table).map_err(|e| e.to_string())?;
            let focused_h =
                is_focused(MonadRegion::OnFigure(&fig_h), &b, &mut table).map_err(|e| e.to_string())?;
            let focused_s =
                is_focused(MonadRegion::OnFigure(&fig_s), &b, &mut table).map_err(|e| e.to_string())?;
            // uniqueness: the touching point is the foot of the center
            let unique = foot(&center, &plane).map_err(|e| e.to_string())? == b;
            Ok(touching && focused_h && focused_s && unique)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "sphere-plane touching is focused at the foot".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let center = gen.point(ctx.dim);
        let v = gen.unit_direction(ctx.dim);
        let rho = gen.positive();
        let b = center.add(&v.scale(&rho));
        let sphere = Sphere::new(center.clone(), rho).map_err(|e| e.to_string())?;
        let tilt = gen.perpendicular(&v).map_err(|e| e.to_string())?;
        let tilted = Hyperplane::new(b.clone(), v.add(&tilt)).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        touches(
            &Figure::from(sphere),
            &Figure::from(tilted),
            &b,
            &mut table,
        )
        .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a tilted plane through the same point does not touch the sphere".to_string()
    });
    rec.records
}

/// The unit sphere over the plane meets it in more than the touching set:
/// cross-batch infinitesimals witness the excess.
pub(super) fn red_herring(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "remark-red-herring";
    let mut rec = Recorder::new(id, ctx.seed);
    let started = Instant::now();
    let run = || -> Result<bool, String> {
        let mut table = BatchTable::new();
        let (_, e1) = table.fresh_batch(1);
        let (_, e2) = table.fresh_batch(1);
        let sphere = Sphere::new(Point::from_ints(&[0, 0, 1]), NilElement::from_int(1))
            .map_err(|e| e.to_string())?;
        let plane = Hyperplane::new(
            Point::from_ints(&[0, 0, 0]),
            Point::from_ints(&[0, 0, 1]),
        )
        .map_err(|e| e.to_string())?;
        let origin = Point::from_ints(&[0, 0, 0]);
        // they do touch at the origin
        let touching = touches(
            &Figure::from(sphere.clone()),
            &Figure::from(plane.clone()),
            &origin,
            &mut table,
        )
        .map_err(|e| e.to_string())?;
        // the cross-batch point is in the intersection but not in the monad
        let herring = Point::new(vec![e1[0].clone(), e2[0].clone(), NilElement::zero()]);
        let in_intersection = sphere.contains(&herring) && plane.contains(&herring);
        let outside_touching_set = !neighbour(&origin, &herring);
        // a same-batch point is in the touching set
        let (_, d) = table.fresh_batch(2);
        let clean = Point::new(vec![d[0].clone(), d[1].clone(), NilElement::zero()]);
        let inside_touching_set = sphere.contains(&clean)
            && plane.contains(&clean)
            && neighbour(&origin, &clean);
        Ok(touching && in_intersection && outside_touching_set && inside_touching_set)
    };
    let outcome = run();
    rec.expect_pass("regression", 0, started, outcome, || {
        "the intersection strictly exceeds the touching set".to_string()
    });

    let started = Instant::now();
    let run_control = || -> Result<bool, String> {
        let mut table = BatchTable::new();
        let (_, e1) = table.fresh_batch(1);
        let (_, e2) = table.fresh_batch(1);
        let origin = Point::from_ints(&[0, 0, 0]);
        let herring = Point::new(vec![e1[0].clone(), e2[0].clone(), NilElement::zero()]);
        Ok(neighbour(&origin, &herring))
    };
    let outcome = run_control();
    rec.negative_control("negative-control", 1, started, outcome, || {
        "cross-batch products do not vanish, so the point is no neighbour".to_string()
    });
    let _ = ctx;
    rec.records
}

//! The touching axioms and the order/monad facts they rest on.

use std::time::Instant;

use sdg_core::geometry::{
    dist, foot, monad_condition, proportional_by_invertible, proportional_some_factor, touches,
    touching_point_external, touching_point_internal, Figure, GenericVector, Hyperplane,
    MonadRegion, Sphere,
};
use sdg_core::geometry::is_focused;
use sdg_core::nilpotent::{BatchTable, NilElement};
use sdg_core::scalar::{Scalar, Sign};
use sdg_core::synthetic::triangle_equality;

use super::CheckContext;
use crate::generate::ConfigGen;
use crate::report::{Recorder, VerificationRecord};

fn nil_ratio(q: num_rational::BigRational) -> NilElement {
    NilElement::from_scalar(Scalar::from_big_rational(q))
}

/// Two spheres through a common point with aligned centers: slice containment
/// holds, and must upgrade to equality.
pub(super) fn monad_containment(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "axiom-monad-containment";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let b = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let t1 = nil_ratio(gen.positive_ratio());
            let mut t2 = nil_ratio(-gen.positive_ratio());
            if (&t1 - &t2).pure_sign() == Sign::Zero {
                t2 = &t2 + NilElement::from_int(1);
            }
            let a_center = b.add(&v.scale(&t1));
            let c_center = b.add(&v.scale(&t2));
            let sphere_a = Sphere::new(a_center, t1.pure_part().abs().into()).map_err(|e| e.to_string())?;
            let sphere_c = Sphere::new(c_center, t2.pure_part().abs().into()).map_err(|e| e.to_string())?;
            let mut table = BatchTable::new();
            let probe = GenericVector::fresh(&mut table, ctx.dim);
            let fig_a = Figure::from(sphere_a);
            let fig_c = Figure::from(sphere_c);
            let ca = monad_condition(&fig_a, &b, &probe, &table).map_err(|e| e.to_string())?;
            let cc = monad_condition(&fig_c, &b, &probe, &table).map_err(|e| e.to_string())?;
            let containment = proportional_some_factor(&ca, &cc).map_err(|e| e.to_string())?;
            let equality = proportional_by_invertible(&ca, &cc).map_err(|e| e.to_string())?;
            let touching = touches(&fig_a, &fig_c, &b, &mut table).map_err(|e| e.to_string())?;
            Ok(containment && equality && touching)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            format!("aligned sphere pair through a shared point, dim {}", ctx.dim)
        });
    }

    // negative control: independent center directions, equality claimed anyway
    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let b = gen.point(ctx.dim);
        let v1 = gen.unit_direction(ctx.dim);
        let v2 = gen.perpendicular(&v1).map_err(|e| e.to_string())?;
        let t = nil_ratio(gen.positive_ratio());
        let a_center = b.add(&v1.scale(&t));
        let c_center = b.add(&v2);
        let r_a = dist(&a_center, &b).map_err(|e| e.to_string())?;
        let r_c = dist(&c_center, &b).map_err(|e| e.to_string())?;
        let sphere_a = Sphere::new(a_center, r_a).map_err(|e| e.to_string())?;
        let sphere_c = Sphere::new(c_center, r_c).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        let probe = GenericVector::fresh(&mut table, ctx.dim);
        let ca = monad_condition(&Figure::from(sphere_a), &b, &probe, &table)
            .map_err(|e| e.to_string())?;
        let cc = monad_condition(&Figure::from(sphere_c), &b, &probe, &table)
            .map_err(|e| e.to_string())?;
        proportional_by_invertible(&ca, &cc).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "perpendicular center directions cannot give equal monad slices".to_string()
    });
    rec.records
}

/// Touching spheres: the touching set is focused, the touching point unique.
pub(super) fn focused_touching(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "axiom-focused-touching";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let external = trial % 2 == 0;
            let (sphere_a, sphere_b, touch) = if external {
                let (sa, sb) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
                let touch = touching_point_external(&sa, &sb).map_err(|e| e.to_string())?;
                (sa, sb, touch)
            } else {
                let (sa, sb) = gen.internal_pair(ctx.dim).map_err(|e| e.to_string())?;
                let touch = touching_point_internal(&sa, &sb).map_err(|e| e.to_string())?;
                (sa, sb, touch)
            };
            let mut table = BatchTable::new();
            let fig_a = Figure::from(sphere_a.clone());
            let fig_b = Figure::from(sphere_b.clone());
            let touching = touches(&fig_a, &fig_b, &touch, &mut table).map_err(|e| e.to_string())?;
            let focused_a =
                is_focused(MonadRegion::OnFigure(&fig_a), &touch, &mut table).map_err(|e| e.to_string())?;
            let focused_b =
                is_focused(MonadRegion::OnFigure(&fig_b), &touch, &mut table).map_err(|e| e.to_string())?;
            // uniqueness: the touching point is the foot of either center on
            // the hyperplane through it orthogonal to the line of centers
            let axis = sphere_b.center().sub(sphere_a.center());
            let plane = Hyperplane::new(touch.clone(), axis).map_err(|e| e.to_string())?;
            let unique = foot(sphere_a.center(), &plane).map_err(|e| e.to_string())? == touch;
            Ok(touching && focused_a && focused_b && unique)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            format!("constructed touching pair, dim {}", ctx.dim)
        });
    }

    // negative control: radii sum differs from the center distance
    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (sphere_a, sphere_c) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
        let bumped = Sphere::new(
            sphere_c.center().clone(),
            sphere_c.radius() + NilElement::from_int(1),
        )
        .map_err(|e| e.to_string())?;
        touching_point_external(&sphere_a, &bumped)
            .map(|_| true)
            .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "center distance no longer equals the radius sum".to_string()
    });
    rec.records
}

/// External touching: `ac = r + s` produces a touching point on both spheres.
pub(super) fn external_touching(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "axiom-external-touching";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (sphere_a, sphere_c) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
            let b = touching_point_external(&sphere_a, &sphere_c).map_err(|e| e.to_string())?;
            let on_both = sphere_a.contains(&b) && sphere_c.contains(&b);
            let mut table = BatchTable::new();
            let touching = touches(
                &Figure::from(sphere_a.clone()),
                &Figure::from(sphere_c.clone()),
                &b,
                &mut table,
            )
            .map_err(|e| e.to_string())?;
            let ab = dist(sphere_a.center(), &b).map_err(|e| e.to_string())?;
            let bc = dist(&b, sphere_c.center()).map_err(|e| e.to_string())?;
            let radii_match =
                (&ab - sphere_a.radius()).is_zero() && (&bc - sphere_c.radius()).is_zero();
            let triangle = triangle_equality(sphere_a.center(), &b, sphere_c.center())
                .map_err(|e| e.to_string())?;
            Ok(on_both && touching && radii_match && triangle)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            format!("external pair with exact radius sum, dim {}", ctx.dim)
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (sphere_a, sphere_c) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
        let shifted_center = sphere_c.center().add(&gen.unit_direction(ctx.dim));
        let shifted =
            Sphere::new(shifted_center, sphere_c.radius().clone()).map_err(|e| e.to_string())?;
        touching_point_external(&sphere_a, &shifted)
            .map(|_| true)
            .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a displaced center breaks the exact distance relation".to_string()
    });
    rec.records
}

/// Internal touching: `A = S(a, r+s)`, `B = S(b, s)`, `ab = r`.
pub(super) fn internal_touching(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "axiom-internal-touching";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (outer, inner) = gen.internal_pair(ctx.dim).map_err(|e| e.to_string())?;
            let c = touching_point_internal(&outer, &inner).map_err(|e| e.to_string())?;
            let on_both = outer.contains(&c) && inner.contains(&c);
            let mut table = BatchTable::new();
            let touching = touches(
                &Figure::from(outer.clone()),
                &Figure::from(inner.clone()),
                &c,
                &mut table,
            )
            .map_err(|e| e.to_string())?;
            let ac = dist(outer.center(), &c).map_err(|e| e.to_string())?;
            let bc = dist(inner.center(), &c).map_err(|e| e.to_string())?;
            let radii_match =
                (&ac - outer.radius()).is_zero() && (&bc - inner.radius()).is_zero();
            let triangle = triangle_equality(outer.center(), inner.center(), &c)
                .map_err(|e| e.to_string())?;
            Ok(on_both && touching && radii_match && triangle)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            format!("internal pair with exact radius difference, dim {}", ctx.dim)
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (outer, inner) = gen.internal_pair(ctx.dim).map_err(|e| e.to_string())?;
        let bumped = Sphere::new(
            inner.center().clone(),
            inner.radius() + NilElement::from_ratio(1, 2),
        )
        .map_err(|e| e.to_string())?;
        touching_point_internal(&outer, &bumped)
            .map(|_| true)
            .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a bumped inner radius breaks the distance relation".to_string()
    });
    rec.records
}

/// One generic inclusion between monad slices already identifies the
/// touching point.
pub(super) fn touching_criterion(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-touching-criterion";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (sphere_a, sphere_c) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
            let b = touching_point_external(&sphere_a, &sphere_c).map_err(|e| e.to_string())?;
            let mut table = BatchTable::new();
            let probe = GenericVector::fresh(&mut table, ctx.dim);
            let fig_a = Figure::from(sphere_a);
            let fig_c = Figure::from(sphere_c);
            let ca = monad_condition(&fig_a, &b, &probe, &table).map_err(|e| e.to_string())?;
            let cc = monad_condition(&fig_c, &b, &probe, &table).map_err(|e| e.to_string())?;
            // hypothesis: one-directional containment
            let one_sided = proportional_some_factor(&ca, &cc).map_err(|e| e.to_string())?;
            // conclusion: equality, hence touching, hence focus at b
            let equality = proportional_by_invertible(&ca, &cc).map_err(|e| e.to_string())?;
            let touching = touches(&fig_a, &fig_c, &b, &mut table).map_err(|e| e.to_string())?;
            let focused =
                is_focused(MonadRegion::OnFigure(&fig_a), &b, &mut table).map_err(|e| e.to_string())?;
            Ok(one_sided && equality && touching && focused)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "one-directional containment at the touching point".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        // two spheres through b with non-aligned centers: no containment
        let b = gen.point(ctx.dim);
        let v1 = gen.unit_direction(ctx.dim);
        let v2 = gen.perpendicular(&v1).map_err(|e| e.to_string())?;
        let a_center = b.add(&v1);
        let c_center = b.add(&v2);
        let r_c = dist(&c_center, &b).map_err(|e| e.to_string())?;
        let sphere_a = Sphere::new(a_center, NilElement::from_int(1)).map_err(|e| e.to_string())?;
        let sphere_c = Sphere::new(c_center, r_c).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        let probe = GenericVector::fresh(&mut table, ctx.dim);
        let ca = monad_condition(&Figure::from(sphere_a), &b, &probe, &table)
            .map_err(|e| e.to_string())?;
        let cc = monad_condition(&Figure::from(sphere_c), &b, &probe, &table)
            .map_err(|e| e.to_string())?;
        proportional_some_factor(&ca, &cc).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "perpendicular normals admit no containment".to_string()
    });
    rec.records
}

/// Strict order between scalars survives adding a generic infinitesimal.
pub(super) fn order_infinitesimal(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-order-infinitesimal";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let mut run = || -> Result<bool, String> {
            let x = nil_ratio(gen.ratio());
            let y = &x + nil_ratio(gen.positive_ratio());
            let mut table = BatchTable::new();
            let (_, eps) = table.fresh_batch(1);
            let shifted = &x + &eps[0];
            Ok((&y - &shifted).pure_sign() == Sign::Positive)
        };
        let outcome = run();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "x < y must give x + eps < y".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let mut run = || -> Result<bool, String> {
        let x = nil_ratio(gen.ratio());
        let y = &x + nil_ratio(gen.positive_ratio());
        let mut table = BatchTable::new();
        let (_, eps) = table.fresh_batch(1);
        let shifted = &x + &eps[0];
        // upside-down claim
        Ok((&shifted - &y).pure_sign() == Sign::Positive)
    };
    let outcome = run();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "the reversed inequality must fail".to_string()
    });
    rec.records
}

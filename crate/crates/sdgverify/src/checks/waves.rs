//! Contact elements, wavefront flow and the envelope theorems.

use std::time::Instant;

use sdg_core::contact::{
    flow_step, front_step, orthogonal, parallel_surface, sphere_envelope, united_position,
    ContactElement, OrientedHypersurface, Orientation, Side,
};
use sdg_core::geometry::{
    constrained_probe, touches, touching_point_external, touching_point_internal, Figure,
    Hyperplane, Point, Sphere,
};
use sdg_core::nilpotent::{BatchTable, NilElement};
use sdg_core::synthetic::extrapolate;

use super::CheckContext;
use crate::generate::ConfigGen;
use crate::report::{Recorder, VerificationRecord};

pub(super) fn orthogonality_transfer(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-orthogonality-transfer";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let a = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let t = gen.positive();
            let s = gen.positive();
            let b = a.add(&v.scale(&t));
            let c = extrapolate(&a, &b, &s).map_err(|e| e.to_string())?;
            let mut table = BatchTable::new();
            // element at a: both b and c are orthogonal to it
            let at_a = ContactElement::new(a.clone(), v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            let b_perp = orthogonal(&b, &at_a, &mut table).map_err(|e| e.to_string())?;
            let c_perp = orthogonal(&c, &at_a, &mut table).map_err(|e| e.to_string())?;
            // variants with the element at the middle and at the far point
            let at_b = ContactElement::new(b.clone(), v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            let at_c = ContactElement::new(c.clone(), v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            let transfers = orthogonal(&a, &at_b, &mut table).map_err(|e| e.to_string())?
                && orthogonal(&c, &at_b, &mut table).map_err(|e| e.to_string())?
                && orthogonal(&a, &at_c, &mut table).map_err(|e| e.to_string())?
                && orthogonal(&b, &at_c, &mut table).map_err(|e| e.to_string())?;
            Ok(b_perp && c_perp && transfers)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "orthogonality transfers along the bracket in all three positions".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let a = gen.point(ctx.dim);
        let v = gen.unit_direction(ctx.dim);
        let at_a = ContactElement::new(a.clone(), v.clone(), Orientation::Positive)
            .map_err(|e| e.to_string())?;
        let w = gen.perpendicular(&v).map_err(|e| e.to_string())?;
        let off = a.add(&v).add(&w);
        let mut table = BatchTable::new();
        orthogonal(&off, &at_a, &mut table).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a point off the normal line is not orthogonal to the element".to_string()
    });
    rec.records
}

pub(super) fn inflation_touching(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-inflation-touching";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (outer, inner) = gen.internal_pair(ctx.dim).map_err(|e| e.to_string())?;
            let c = touching_point_internal(&outer, &inner).map_err(|e| e.to_string())?;
            let t = gen.positive();
            let outer_inflated = outer.inflate(&t).map_err(|e| e.to_string())?;
            let inner_inflated = inner.inflate(&t).map_err(|e| e.to_string())?;
            let c_inflated =
                touching_point_internal(&outer_inflated, &inner_inflated).map_err(|e| e.to_string())?;
            // the chain of identities for the inflated touching point
            let s = inner.radius().clone();
            let via_outer =
                extrapolate(outer.center(), inner.center(), &(&s + &t)).map_err(|e| e.to_string())?;
            let via_first_touch =
                extrapolate(outer.center(), &c, &t).map_err(|e| e.to_string())?;
            let via_inner_center =
                extrapolate(inner.center(), &c, &t).map_err(|e| e.to_string())?;
            let mut table = BatchTable::new();
            let still_touch = touches(
                &Figure::from(outer_inflated),
                &Figure::from(inner_inflated),
                &c_inflated,
                &mut table,
            )
            .map_err(|e| e.to_string())?;
            Ok(still_touch
                && c_inflated == via_outer
                && c_inflated == via_first_touch
                && c_inflated == via_inner_center)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "inflated internal pair touches along the same ray".to_string()
        });
    }

    // negative control: inflating an external pair must break touching
    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (sphere_a, sphere_c) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
        let t = gen.positive();
        let a_inflated = sphere_a.inflate(&t).map_err(|e| e.to_string())?;
        let c_inflated = sphere_c.inflate(&t).map_err(|e| e.to_string())?;
        touching_point_external(&a_inflated, &c_inflated)
            .map(|_| true)
            .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "inflating an external pair without moving a center breaks touching".to_string()
    });
    rec.records
}

pub(super) fn front_independence(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-front-independence";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let base = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let scale = gen.positive();
            let element = ContactElement::new(base.clone(), v.scale(&scale), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            let s = gen.positive();
            let stepped = front_step(&element, &s).map_err(|e| e.to_string())?;
            // two different inside representatives
            let rho1 = gen.positive();
            let rho2 = &rho1 + gen.positive();
            for rho in [&rho1, &rho2] {
                let center = base.sub(&v.scale(rho));
                let rep = Sphere::new(center, rho.clone()).map_err(|e| e.to_string())?;
                let from_rep = ContactElement::from_sphere(&rep, &base, Side::Inside)
                    .map_err(|e| e.to_string())?;
                if !from_rep.same_oriented(&element).map_err(|e| e.to_string())? {
                    return Ok(false);
                }
                let via_rep =
                    extrapolate(rep.center(), &base, &s).map_err(|e| e.to_string())?;
                if via_rep != stepped {
                    return Ok(false);
                }
            }
            // opposite orientation mirrors the step
            let flipped = ContactElement::new(base.clone(), v.scale(&scale), Orientation::Negative)
                .map_err(|e| e.to_string())?;
            let mirrored = front_step(&flipped, &s).map_err(|e| e.to_string())?;
            Ok(base.sub(&stepped) == mirrored.sub(&base))
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "front point agrees across inside representatives".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        // a sphere through the base whose center is off the normal line is
        // not a representative: its radial step disagrees
        let base = gen.point(ctx.dim);
        let v = gen.unit_direction(ctx.dim);
        let element = ContactElement::new(base.clone(), v.clone(), Orientation::Positive)
            .map_err(|e| e.to_string())?;
        let s = gen.positive();
        let stepped = front_step(&element, &s).map_err(|e| e.to_string())?;
        let w = gen.perpendicular(&v).map_err(|e| e.to_string())?;
        let off_center = base.sub(&v).add(&w);
        let via_wrong = extrapolate(&off_center, &base, &s).map_err(|e| e.to_string())?;
        Ok(via_wrong == stepped)
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "an off-axis sphere is not an inside representative".to_string()
    });
    rec.records
}

pub(super) fn flow_semigroup(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-flow-semigroup";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let base = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let orientation = if trial % 2 == 0 {
                Orientation::Positive
            } else {
                Orientation::Negative
            };
            let element =
                ContactElement::new(base, v, orientation).map_err(|e| e.to_string())?;
            let s = gen.positive();
            let t = gen.positive();
            let stepwise = flow_step(&flow_step(&element, &s).map_err(|e| e.to_string())?, &t)
                .map_err(|e| e.to_string())?;
            let direct = flow_step(&element, &(&s + &t)).map_err(|e| e.to_string())?;
            let agree = stepwise.same_oriented(&direct).map_err(|e| e.to_string())?;
            let focus_is_front =
                direct.base() == &front_step(&element, &(&s + &t)).map_err(|e| e.to_string())?;
            let orientation_kept = direct.orientation() == element.orientation();
            Ok(agree && focus_is_front && orientation_kept)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "flow steps compose additively".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let base = gen.point(ctx.dim);
        let v = gen.unit_direction(ctx.dim);
        let element =
            ContactElement::new(base, v, Orientation::Positive).map_err(|e| e.to_string())?;
        let s = gen.positive();
        let t = gen.positive();
        let stepwise = flow_step(&flow_step(&element, &s).map_err(|e| e.to_string())?, &t)
            .map_err(|e| e.to_string())?;
        let wrong = flow_step(&element, &(&s + &t + &t)).map_err(|e| e.to_string())?;
        stepwise.same_oriented(&wrong).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a doubled second flow step lands elsewhere".to_string()
    });
    rec.records
}

pub(super) fn huygens_spheres(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "thm-huygens-spheres";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let center = gen.point(ctx.dim);
            let r = gen.positive();
            let s = gen.positive();
            let mut table = BatchTable::new();
            let record =
                sphere_envelope(&center, &r, &s, 8, &mut table).map_err(|e| e.to_string())?;
            Ok(record.all_pass())
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "every wave sphere touches the outer sphere at its radial point".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        // wrong envelope: the radial touch point is not even on it
        let center = gen.point(ctx.dim);
        let r = gen.positive();
        let s = gen.positive();
        let u = gen.unit_direction(ctx.dim);
        let b = center.add(&u.scale(&r));
        let wave = Sphere::new(b.clone(), s.clone()).map_err(|e| e.to_string())?;
        let wrong_outer = Sphere::new(center.clone(), &r + &s + NilElement::from_int(1))
            .map_err(|e| e.to_string())?;
        let touch = extrapolate(&center, &b, &s).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        touches(
            &Figure::from(wave),
            &Figure::from(wrong_outer),
            &touch,
            &mut table,
        )
        .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "an enlarged outer sphere is not the envelope".to_string()
    });
    rec.records
}

pub(super) fn parallel_surface_law(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "thm-parallel-surface";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let s = gen.positive();
            let t = gen.positive();
            let sampled = gen.surface(ctx.dim, 6).map_err(|e| e.to_string())?;
            // the sampled sphere is recoverable from any sample
            let first = &sampled.samples()[0];
            let center = first.base().sub(first.normal());
            let r_sq = first.normal().norm_sq();
            let mut table = BatchTable::new();
            let moved = parallel_surface(&sampled, &s, &mut table).map_err(|e| e.to_string())?;
            let r = r_sq.sqrt().map_err(|e| e.to_string())?;
            let target = Sphere::new(center.clone(), &r + &s).map_err(|e| e.to_string())?;
            if !moved.samples().iter().all(|p| target.contains(p.base())) {
                return Ok(false);
            }
            // pointwise semigroup law
            let twice = parallel_surface(&moved, &t, &mut table).map_err(|e| e.to_string())?;
            let direct =
                parallel_surface(&sampled, &(&s + &t), &mut table).map_err(|e| e.to_string())?;
            for (x, y) in twice.samples().iter().zip(direct.samples()) {
                if !x.same_oriented(y).map_err(|e| e.to_string())? {
                    return Ok(false);
                }
            }
            // a sampled line translates by s along its unit normal
            if ctx.dim == 2 {
                let basepoint = gen.point(2);
                let normal = gen.unit_direction(2);
                let line = Hyperplane::new(basepoint.clone(), normal.clone())
                    .map_err(|e| e.to_string())?;
                let sampled_line =
                    OrientedHypersurface::from_line_samples(&line, 5).map_err(|e| e.to_string())?;
                let moved_line =
                    parallel_surface(&sampled_line, &s, &mut table).map_err(|e| e.to_string())?;
                let translated =
                    Hyperplane::new(basepoint.add(&normal.scale(&s)), normal.clone())
                        .map_err(|e| e.to_string())?;
                if !moved_line
                    .samples()
                    .iter()
                    .all(|p| translated.contains(p.base()))
                {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "parallel surfaces land on the offset figure and compose".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let center = gen.point(ctx.dim);
        let r = gen.positive();
        let s = gen.positive();
        let sphere = Sphere::new(center.clone(), r.clone()).map_err(|e| e.to_string())?;
        let sampled =
            OrientedHypersurface::from_sphere_samples(&sphere, 6).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        let moved = parallel_surface(&sampled, &s, &mut table).map_err(|e| e.to_string())?;
        // wrong target: doubled offset
        let wrong = Sphere::new(center, &r + &s + &s).map_err(|e| e.to_string())?;
        Ok(moved.samples().iter().all(|p| wrong.contains(p.base())))
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "the parallel surface is not at doubled distance".to_string()
    });
    rec.records
}

pub(super) fn united_position_check(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "remark-united-position";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let base = gen.point(ctx.dim);
            let v = gen.unit_direction(ctx.dim);
            let element = ContactElement::new(base.clone(), v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            // reflexive
            if !united_position(&element, &element) {
                return Ok(false);
            }
            // adjacent monadic sample along the element
            let mut table = BatchTable::new();
            let (_, d) = constrained_probe(&mut table, v.coords()).map_err(|e| e.to_string())?;
            let neighbour_base = base.add(&Point::new(d));
            let adjacent = ContactElement::new(neighbour_base, v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            if !united_position(&element, &adjacent) {
                return Ok(false);
            }
            // apart bases are never united
            let far_base = base.add(&v);
            let far = ContactElement::new(far_base, v.clone(), Orientation::Positive)
                .map_err(|e| e.to_string())?;
            Ok(!united_position(&element, &far))
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "monadically adjacent elements are united, apart ones are not".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let base = gen.point(ctx.dim);
        let v = gen.unit_direction(ctx.dim);
        let element = ContactElement::new(base.clone(), v.clone(), Orientation::Positive)
            .map_err(|e| e.to_string())?;
        let far = ContactElement::new(base.add(&v), v, Orientation::Positive)
            .map_err(|e| e.to_string())?;
        Ok(united_position(&element, &far))
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "elements at apart bases cannot be united".to_string()
    });
    rec.records
}

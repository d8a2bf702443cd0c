//! Collinearity, interpolation/extrapolation and ray checks.

use std::time::Instant;

use sdg_core::geometry::{constrained_probe, dist, Point};
use sdg_core::nilpotent::{BatchTable, NilElement};
use sdg_core::scalar::Scalar;
use sdg_core::synthetic::{
    aligned, collinear, collinear_condition, collinearity_closure, extrapolate,
    extrapolate_source_invariance, interpolate, triangle_equality, CollinearCondition, Ray,
};
use sdg_core::geometry::{touching_point_external, touching_point_internal};

use super::CheckContext;
use crate::generate::ConfigGen;
use crate::report::{Recorder, VerificationRecord};

fn nil_ratio(q: num_rational::BigRational) -> NilElement {
    NilElement::from_scalar(Scalar::from_big_rational(q))
}

/// Wobble the middle of a collinear triple transversally by one generic
/// infinitesimal: the triangle equality survives, the bracket must not.
fn wobbled_middle(
    gen: &mut ConfigGen,
    table: &mut BatchTable,
    a: &Point,
    b: &Point,
) -> Result<Point, String> {
    let along = b.sub(a);
    let transversal = gen.perpendicular(&along).map_err(|e| e.to_string())?;
    let (_, eps) = table.fresh_batch(1);
    Ok(b.add(&transversal.scale(&eps[0])))
}

pub(super) fn collinear_equivalence(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "lemma-collinear-equivalence";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (a, b, c) = gen.collinear_triple(ctx.dim).map_err(|e| e.to_string())?;
            for which in CollinearCondition::ALL {
                if !collinear_condition(&a, &b, &c, which).map_err(|e| e.to_string())? {
                    return Ok(false);
                }
            }
            // perturbed middle: all six must flip to false together
            let mut table = BatchTable::new();
            let b_wobbled = wobbled_middle(&mut gen, &mut table, &a, &b)?;
            if !triangle_equality(&a, &b_wobbled, &c).map_err(|e| e.to_string())? {
                return Ok(false);
            }
            for which in CollinearCondition::ALL {
                if collinear_condition(&a, &b_wobbled, &c, which).map_err(|e| e.to_string())? {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "six-way agreement on a straight and a wobbled triple".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (a, b, c) = gen.collinear_triple(ctx.dim).map_err(|e| e.to_string())?;
        let mut table = BatchTable::new();
        let b_wobbled = wobbled_middle(&mut gen, &mut table, &a, &b)?;
        collinear_condition(&a, &b_wobbled, &c, CollinearCondition::B1).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "the wobbled middle must fail the stiffness condition".to_string()
    });
    rec.records
}

pub(super) fn interp_extrap_roundtrip(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-interp-extrap-roundtrip";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let a = gen.point(ctx.dim);
            let b = gen.point_apart(ctx.dim, &[&a]).map_err(|e| e.to_string())?;
            let s = gen.positive();
            let c = extrapolate(&a, &b, &s).map_err(|e| e.to_string())?;
            let back = interpolate(&a, &c, &s).map_err(|e| e.to_string())?;
            if back != b {
                return Ok(false);
            }
            let there_again = extrapolate(&a, &back, &s).map_err(|e| e.to_string())?;
            if there_again != c {
                return Ok(false);
            }
            // characterization: distance s from the anchor, bracket holds
            if dist(&b, &c).map_err(|e| e.to_string())? != s {
                return Ok(false);
            }
            if !collinear(&a, &b, &c).map_err(|e| e.to_string())? {
                return Ok(false);
            }
            // uniqueness: any generic distance-preserving wobble of c breaks
            // the bracket, so nothing else satisfies the characterization
            let mut table = BatchTable::new();
            let along = c.sub(&b);
            let (_, d) = constrained_probe(&mut table, along.coords()).map_err(|e| e.to_string())?;
            let c_wobbled = c.add(&Point::new(d));
            if (dist(&b, &c_wobbled).map_err(|e| e.to_string())? - &s).is_zero()
                && collinear(&a, &b, &c_wobbled).map_err(|e| e.to_string())?
            {
                return Ok(false);
            }
            Ok(true)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "round trips and the distance-plus-bracket characterization".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let a = gen.point(ctx.dim);
        let b = gen.point_apart(ctx.dim, &[&a]).map_err(|e| e.to_string())?;
        let too_far = dist(&a, &b).map_err(|e| e.to_string())? + NilElement::from_int(1);
        interpolate(&a, &b, &too_far)
            .map(|_| true)
            .map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "interpolation beyond the distance must be rejected".to_string()
    });
    rec.records
}

pub(super) fn collinear_closure(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-collinear-closure";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (a, b, c) = gen.collinear_triple(ctx.dim).map_err(|e| e.to_string())?;
            let d = extrapolate(&a, &c, &gen.positive()).map_err(|e| e.to_string())?;
            let chained = collinearity_closure(&a, &b, &c, &d).map_err(|e| e.to_string())?;
            if chained.brackets != [true; 4] || !chained.closure_ok {
                return Ok(false);
            }
            // an unconstrained quadruple only has to respect the law
            let p = gen.point(ctx.dim);
            let q = gen.point_apart(ctx.dim, &[&p]).map_err(|e| e.to_string())?;
            let r = gen.point_apart(ctx.dim, &[&p, &q]).map_err(|e| e.to_string())?;
            let t = gen
                .point_apart(ctx.dim, &[&p, &q, &r])
                .map_err(|e| e.to_string())?;
            let random = collinearity_closure(&p, &q, &r, &t).map_err(|e| e.to_string())?;
            Ok(random.closure_ok)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "two-implies-four closure on chained extrapolations".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        // guard against vacuity: a generic quadruple must not satisfy all four
        let p = gen.point(ctx.dim);
        let q = gen.point_apart(ctx.dim, &[&p]).map_err(|e| e.to_string())?;
        let r = gen.point_apart(ctx.dim, &[&p, &q]).map_err(|e| e.to_string())?;
        let t = gen
            .point_apart(ctx.dim, &[&p, &q, &r])
            .map_err(|e| e.to_string())?;
        let record = collinearity_closure(&p, &q, &r, &t).map_err(|e| e.to_string())?;
        Ok(record.brackets == [true; 4])
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a generic quadruple is not fully collinear".to_string()
    });
    rec.records
}

pub(super) fn source_invariance(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-source-invariance";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let (a_prime, a, b) = gen.collinear_triple(ctx.dim).map_err(|e| e.to_string())?;
            let s = gen.positive();
            extrapolate_source_invariance(&a_prime, &a, &b, &s).map_err(|e| e.to_string())
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "both directors on one line extrapolate identically".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (a_prime, a, b) = gen.collinear_triple(ctx.dim).map_err(|e| e.to_string())?;
        let off_line = a_prime.add(&gen.perpendicular(&b.sub(&a_prime)).map_err(|e| e.to_string())?);
        extrapolate_source_invariance(&off_line, &a, &b, &gen.positive()).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "an off-line director violates the hypothesis".to_string()
    });
    rec.records
}

pub(super) fn center_alignment(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-center-alignment";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            if trial % 2 == 0 {
                let (sa, sc) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
                let b = touching_point_external(&sa, &sc).map_err(|e| e.to_string())?;
                // touching point lies between the centers
                Ok(collinear(sa.center(), &b, sc.center()).map_err(|e| e.to_string())?
                    && aligned(sa.center(), sc.center(), &b).map_err(|e| e.to_string())?)
            } else {
                let (outer, inner) = gen.internal_pair(ctx.dim).map_err(|e| e.to_string())?;
                let c = touching_point_internal(&outer, &inner).map_err(|e| e.to_string())?;
                // inner center lies between the outer center and the touch
                Ok(collinear(outer.center(), inner.center(), &c).map_err(|e| e.to_string())?
                    && aligned(&c, outer.center(), inner.center()).map_err(|e| e.to_string())?)
            }
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "touching spheres align their centers with the touching point".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let (sa, sc) = gen.external_pair(ctx.dim).map_err(|e| e.to_string())?;
        let b = touching_point_external(&sa, &sc).map_err(|e| e.to_string())?;
        let off = b.add(&gen.perpendicular(&sc.center().sub(sa.center())).map_err(|e| e.to_string())?);
        aligned(sa.center(), &off, sc.center()).map_err(|e| e.to_string())
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a point off the center line is not aligned with the centers".to_string()
    });
    rec.records
}

pub(super) fn ray_semigroup(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-ray-semigroup";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let a = gen.point(ctx.dim);
            let b = gen.point_apart(ctx.dim, &[&a]).map_err(|e| e.to_string())?;
            let s = gen.positive();
            let t = gen.positive();
            let stepwise = extrapolate(
                &a,
                &extrapolate(&a, &b, &s).map_err(|e| e.to_string())?,
                &t,
            )
            .map_err(|e| e.to_string())?;
            let direct = extrapolate(&a, &b, &(&s + &t)).map_err(|e| e.to_string())?;
            Ok(stepwise == direct)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "two extrapolation steps equal one combined step".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let a = gen.point(ctx.dim);
        let b = gen.point_apart(ctx.dim, &[&a]).map_err(|e| e.to_string())?;
        let s = gen.positive();
        let t = gen.positive();
        let stepwise = extrapolate(
            &a,
            &extrapolate(&a, &b, &s).map_err(|e| e.to_string())?,
            &t,
        )
        .map_err(|e| e.to_string())?;
        let wrong = extrapolate(&a, &b, &(&s + &t + &t)).map_err(|e| e.to_string())?;
        Ok(stepwise == wrong)
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "a doubled second step lands elsewhere".to_string()
    });
    rec.records
}

pub(super) fn ray_isometry(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "prop-ray-isometry";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            let a = gen.point(ctx.dim);
            let b = gen.point_apart(ctx.dim, &[&a]).map_err(|e| e.to_string())?;
            let ray = Ray::new(a, b).map_err(|e| e.to_string())?;
            let s = gen.positive();
            let t = &s + gen.positive();
            let w = &t + gen.positive();
            let ps = ray.eval(&s).map_err(|e| e.to_string())?;
            let pt = ray.eval(&t).map_err(|e| e.to_string())?;
            let pw = ray.eval(&w).map_err(|e| e.to_string())?;
            let isometric = dist(&ps, &pt).map_err(|e| e.to_string())? == (&t - &s);
            let on_line = aligned(&ps, &pt, &pw).map_err(|e| e.to_string())?;
            Ok(isometric && on_line)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "ray evaluation preserves distances and stays aligned".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        let a = gen.point(ctx.dim);
        let b = gen.point_apart(ctx.dim, &[&a]).map_err(|e| e.to_string())?;
        let ray = Ray::new(a, b).map_err(|e| e.to_string())?;
        let s = gen.positive();
        let t = &s + gen.positive();
        let ps = ray.eval(&s).map_err(|e| e.to_string())?;
        let pt = ray.eval(&t).map_err(|e| e.to_string())?;
        Ok(dist(&ps, &pt).map_err(|e| e.to_string())? == (&t + &s))
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "distance along the ray is t - s, not t + s".to_string()
    });
    rec.records
}

pub(super) fn nonray_isometry(ctx: &CheckContext) -> Vec<VerificationRecord> {
    let id = "example-nonray-isometry";
    let mut rec = Recorder::new(id, ctx.seed);
    for trial in 0..ctx.trials as u64 {
        let started = Instant::now();
        let mut gen = ConfigGen::new(ctx.seed, id, trial);
        let outcome = (|| -> Result<bool, String> {
            // the positive axis really is the ray generated by (-1,0), (0,0)
            let axis_ray = Ray::new(Point::from_ints(&[-1, 0]), Point::from_ints(&[0, 0]))
                .map_err(|e| e.to_string())?;
            let s0 = gen.positive();
            let expected = Point::new(vec![s0.clone(), NilElement::zero()]);
            if axis_ray.eval(&s0).map_err(|e| e.to_string())? != expected {
                return Ok(false);
            }
            // the curve s -> (s, eps*s^2) is isometric but not a ray
            let mut table = BatchTable::new();
            let (_, eps) = table.fresh_batch(1);
            let s1 = gen.positive_ratio();
            let s2 = &s1 + gen.positive_ratio();
            let s3 = &s2 + gen.positive_ratio();
            let curve = |s: &num_rational::BigRational| {
                Point::new(vec![
                    nil_ratio(s.clone()),
                    eps[0].scale(&Scalar::from_big_rational(s * s)),
                ])
            };
            let (x, y, z) = (curve(&s1), curve(&s2), curve(&s3));
            let taut = triangle_equality(&x, &y, &z).map_err(|e| e.to_string())?;
            let stiff = collinear(&x, &y, &z).map_err(|e| e.to_string())?;
            Ok(taut && !stiff)
        })();
        rec.expect_pass(&format!("trial-{trial:02}"), trial, started, outcome, || {
            "the curved isometry passes (xyz) but fails [xyz]".to_string()
        });
    }

    let trial = ctx.trials as u64;
    let started = Instant::now();
    let mut gen = ConfigGen::new(ctx.seed, id, trial);
    let outcome = (|| -> Result<bool, String> {
        // with the infinitesimal set to zero the curve is straight, so
        // claiming the bracket fails must itself fail
        let s1 = gen.positive_ratio();
        let s2 = &s1 + gen.positive_ratio();
        let s3 = &s2 + gen.positive_ratio();
        let flat = |s: &num_rational::BigRational| {
            Point::new(vec![nil_ratio(s.clone()), NilElement::zero()])
        };
        let (x, y, z) = (flat(&s1), flat(&s2), flat(&s3));
        Ok(!collinear(&x, &y, &z).map_err(|e| e.to_string())?)
    })();
    rec.negative_control("negative-control", trial, started, outcome, || {
        "with eps = 0 the curve is the ray itself".to_string()
    });
    rec.records
}

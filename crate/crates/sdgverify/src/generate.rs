//! Seeded random configurations with exact relations built in.
//!
//! Coordinates are bounded rationals. Touching sphere pairs are constructed
//! so the radius/distance relations hold exactly: rational unit directions
//! come from the stereographic parametrization, so center distances are
//! rational by construction. Degenerate draws are retried up to a cap;
//! exhausting the cap is an error, never a silent skip.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdg_core::contact::{stereographic_direction, OrientedHypersurface};
use sdg_core::geometry::{apart, Point, Sphere};
use sdg_core::nilpotent::NilElement;
use sdg_core::scalar::Scalar;
use sdg_core::synthetic::extrapolate;

use crate::HarnessError;

const RETRY_CAP: usize = 1000;

/// Deterministic per-(seed, check, trial) random stream.
pub fn trial_rng(seed: u64, check_id: &str, trial: u64) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf29ce484222325;
    for byte in check_id.bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    let mixed = seed ^ h ^ trial.wrapping_mul(0x9e3779b97f4a7c15);
    ChaCha8Rng::seed_from_u64(mixed)
}

pub struct ConfigGen {
    rng: ChaCha8Rng,
}

impl ConfigGen {
    pub fn new(seed: u64, check_id: &str, trial: u64) -> ConfigGen {
        ConfigGen {
            rng: trial_rng(seed, check_id, trial),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A rational with |numerator| <= 100 and 1 <= denominator <= 100.
    pub fn ratio(&mut self) -> BigRational {
        let n = self.rng.random_range(-100i64..=100);
        let d = self.rng.random_range(1i64..=100);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn positive_ratio(&mut self) -> BigRational {
        let n = self.rng.random_range(1i64..=100);
        let d = self.rng.random_range(1i64..=100);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn scalar(&mut self) -> Scalar {
        Scalar::from_big_rational(self.ratio())
    }

    pub fn positive(&mut self) -> NilElement {
        NilElement::from_scalar(Scalar::from_big_rational(self.positive_ratio()))
    }

    pub fn point(&mut self, dim: usize) -> Point {
        Point::new(
            (0..dim)
                .map(|_| NilElement::from_scalar(Scalar::from_big_rational(self.ratio())))
                .collect(),
        )
    }

    /// A rational point apart from all of `others`.
    pub fn point_apart(&mut self, dim: usize, others: &[&Point]) -> Result<Point, HarnessError> {
        for _ in 0..RETRY_CAP {
            let p = self.point(dim);
            if others.iter().all(|o| apart(o, &p)) {
                return Ok(p);
            }
        }
        Err(HarnessError::GenerationExhausted("apart point"))
    }

    /// An exact rational unit vector.
    pub fn unit_direction(&mut self, dim: usize) -> Point {
        let params: Vec<BigRational> = (0..dim - 1)
            .map(|_| {
                let n = self.rng.random_range(-6i64..=6);
                let d = self.rng.random_range(1i64..=6);
                BigRational::new(BigInt::from(n), BigInt::from(d))
            })
            .collect();
        stereographic_direction(&params)
    }

    /// A nonzero rational vector orthogonal to `u` (Gram–Schmidt step).
    pub fn perpendicular(&mut self, u: &Point) -> Result<Point, HarnessError> {
        let u_sq = u.norm_sq();
        let u_sq_inv = u_sq
            .inverse()
            .map_err(|_| HarnessError::GenerationExhausted("perpendicular to a null vector"))?;
        for _ in 0..RETRY_CAP {
            let w0 = self.point(u.dim());
            let t = w0.inner(u) * &u_sq_inv;
            let w = w0.sub(&u.scale(&t));
            if w.coords().iter().any(|c| !c.is_zero()) {
                return Ok(w);
            }
        }
        Err(HarnessError::GenerationExhausted("perpendicular vector"))
    }

    /// Externally touching pair: `ac = r + s` exactly.
    pub fn external_pair(&mut self, dim: usize) -> Result<(Sphere, Sphere), HarnessError> {
        let a = self.point(dim);
        let u = self.unit_direction(dim);
        let r = self.positive();
        let s = self.positive();
        let c = a.add(&u.scale(&(&r + &s)));
        let sphere_a = Sphere::new(a, r).expect("positive radius");
        let sphere_c = Sphere::new(c, s).expect("positive radius");
        Ok((sphere_a, sphere_c))
    }

    /// Internally touching pair `A = S(a, r+s)`, `B = S(b, s)` with `ab = r`.
    pub fn internal_pair(&mut self, dim: usize) -> Result<(Sphere, Sphere), HarnessError> {
        let a = self.point(dim);
        let u = self.unit_direction(dim);
        let r = self.positive();
        let s = self.positive();
        let b = a.add(&u.scale(&r));
        let outer = Sphere::new(a, &r + &s).expect("positive radius");
        let inner = Sphere::new(b, s).expect("positive radius");
        Ok((outer, inner))
    }

    /// A collinear triple built by extrapolation (so the bracket holds by
    /// construction), with rational data.
    pub fn collinear_triple(&mut self, dim: usize) -> Result<(Point, Point, Point), HarnessError> {
        let a = self.point(dim);
        let b = self.point_apart(dim, &[&a])?;
        let s = self.positive();
        let c = extrapolate(&a, &b, &s).map_err(|e| HarnessError::Kernel(e.to_string()))?;
        Ok((a, b, c))
    }

    /// A random sampled hypersurface: a sphere sampled at exact rational
    /// directions, with outward orientation.
    pub fn surface(
        &mut self,
        dim: usize,
        samples: usize,
    ) -> Result<OrientedHypersurface, HarnessError> {
        let center = self.point(dim);
        let radius = self.positive();
        let sphere = Sphere::new(center, radius).expect("positive radius");
        OrientedHypersurface::from_sphere_samples(&sphere, samples)
            .map_err(|e| HarnessError::Kernel(e.to_string()))
    }
}

//! Exact kernel for metric synthetic differential geometry.
//!
//! The crate layers, bottom up:
//!
//! * [`scalar`]: exact constructible reals (rationals closed under field
//!   operations and square roots of positives) with decidable sign;
//! * [`nilpotent`]: the nilpotent-extended number line: a finite-dimensional
//!   algebra over the scalars with batch-structured infinitesimal generators;
//! * [`geometry`]: points of `R^n` over that algebra, apartness, the
//!   neighbour relation, monads, distance, spheres, hyperplanes, touching,
//!   focus and feet;
//! * [`synthetic`]: interpolation, extrapolation, the strong collinearity
//!   bracket and rays;
//! * [`contact`]: oriented contact elements, wavefront operators, sphere
//!   inflation, sampled hypersurfaces and envelope verification.
//!
//! Everything is exact: predicates are decided by canonical-form zero tests,
//! never by numeric tolerance.

pub mod contact;
pub mod error;
pub mod geometry;
pub mod nilpotent;
pub mod scalar;
pub mod synthetic;

pub use error::{Error, Result};
pub use scalar::{Scalar, Sign};

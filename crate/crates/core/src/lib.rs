//! Tetrahedron sampling and vertex estimation by the method of moments.
//!
//! Two directions:
//!
//! * [`sampler`] draws points uniformly distributed inside a given
//!   tetrahedron (cube-folding construction, deterministic under a 64-bit
//!   seed).
//! * [`estimator`] goes the other way: given only such interior points, it
//!   recovers the four vertices. Per axis, the first four sample moments pin
//!   down a monic quartic whose roots are the vertex coordinates on that
//!   axis ([`quartic`]); the product moment plus a containment test then
//!   select how the per-axis roots combine into vertices.
//!
//! [`harness`] wraps the loop (sample, estimate, match against truth, report
//! the standard error of the estimate) for Monte Carlo validation sweeps,
//! and [`io`] holds the plain-text file formats shared with the CLI.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the `D*`
//! aliases at the crate root fix the scalar to `f64`, which is what the CLI
//! and the validation harness use.

pub mod error;
pub mod estimator;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod kahan;
pub mod moments;
pub mod quartic;
pub mod sampler;

mod num;

#[cfg(test)]
pub(crate) mod test_fixtures;

use std::fmt;

pub use error::{Error, Result};
pub use estimator::{
    estimate_vertices, AxisTransform, Diagnostic, EstimationResult, EstimatorConfig,
    MatchingVariant, PermutationPair,
};
pub use geometry::{Axis, Barycentric4, Point3, Tetrahedron};
pub use harness::{SweepReport, TrialOutcome, TrialReport};
pub use moments::{EmpiricalMomentSet, MomentIndex, TheoreticalMomentSet};
pub use quartic::{QuarticCoefficients, RootQuadruple};
pub use sampler::SeededGenerator;

/// Scalar type the library is generic over.
///
/// `f32` and `f64` implement it. Everything downstream of the moment
/// accumulation assumes IEEE binary floating point; the quartic solver
/// internally promotes to `f64` for the eigenvalue extraction and polishes
/// in `T`.
pub trait Real:
    num_traits::Float + num_traits::FromPrimitive + fmt::Debug + fmt::Display + Default + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Double-precision aliases; the CLI and harness work in these.
pub type DPoint3 = Point3<f64>;
pub type DTetrahedron = Tetrahedron<f64>;
pub type DBarycentric4 = Barycentric4<f64>;
pub type DEstimationResult = EstimationResult<f64>;
pub type DEstimatorConfig = EstimatorConfig<f64>;
pub type DTrialReport = TrialReport<f64>;
pub type DSweepReport = SweepReport<f64>;

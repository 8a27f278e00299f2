//! Exact reductions between P-matrix linear complementarity problems,
//! Lin-Bellman min/max systems, colorful tangents of strongly well-separated
//! point families, and unique sink orientations of grids and cubes.
//!
//! Every reduction comes with a solution pull-back, and every problem comes
//! with an exponential brute-force solver so that pull-backs can be checked
//! against ground truth on small instances.
//!
//! The algebra is generic over [`exact::Scalar`]; the aliases below fix the
//! scalar to arbitrary-precision rationals, which is what every verification
//! path uses.

pub mod error;
pub mod exact;
pub mod gen;
pub mod geometry;
pub mod lcp;
pub mod linbellman;
pub mod reduction;
pub mod uso;

pub use error::{Error, Result};
pub use reduction::Reduction;

pub type Rational = num_rational::BigRational;
pub type Matrix = exact::Matrix<Rational>;
pub type Vector = Vec<Rational>;

pub type LcpInstance = lcp::LcpInstance<Rational>;
pub type LcpSolution = lcp::LcpSolution<Rational>;
pub type GlcpInstance = lcp::GlcpInstance<Rational>;
pub type GlcpSolution = lcp::GlcpSolution<Rational>;
pub type LinBellmanSystem = linbellman::LinBellmanSystem<Rational>;
pub type Point = geometry::Point<Rational>;
pub type Hyperplane = geometry::Hyperplane<Rational>;
pub type PointSetFamily = geometry::PointSetFamily<Rational>;

/// Default cap on exhaustive enumerations (bases, patterns, choices).
pub const DEFAULT_LIMIT: u128 = 1 << 16;

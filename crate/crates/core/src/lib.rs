//! Exact enumerative invariants for varieties and schemes cut out by quadrics.
//!
//! The crate computes apparent-double-point vectors of smooth varieties and their
//! linear sections, double-point counts of 2-Veronese re-embeddings, common secant
//! line counts through Schubert calculus on the Grassmannian of lines, the
//! restriction of a linear system of quadrics to a line, and the degree bounds
//! `binom(d, 2) <= binom(2c - 1, c - 1)` together with their refinements and
//! equality classifications.
//!
//! Everything on a verdict path is exact. Polynomial, cycle and quadratic-form
//! containers are generic over the coefficient type ([`Scalar`], [`ExactField`]);
//! the aliases below fix the big-integer and big-rational instances used by the
//! rest of the crate.

pub mod arith;
pub mod bounds;
pub mod cases;
pub mod chow;
pub mod diophantine;
pub mod double_points;
pub mod json;
pub mod line;
pub mod scalar;
pub mod schubert;

pub use scalar::{ExactField, Scalar};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision unsigned integer.
pub type Natural = num_bigint::BigUint;
/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type Rational = num_rational::BigRational;

/// Total Chern/Segre class with integer coefficients.
pub type ClassPolynomial = chow::TruncatedClassPolynomial<Integer>;
/// Integer Schubert cycle on the Grassmannian of lines.
pub type Cycle = schubert::SchubertCycle<Integer>;
/// Quadratic form with rational coefficients.
pub type RationalForm = line::QuadraticForm<Rational>;
/// Binary quadric with rational coefficients.
pub type RationalBinaryQuadric = line::BinaryQuadric<Rational>;

pub use bounds::{BoundReport, SchemeDescriptor};
pub use chow::VarietyNumerics;
pub use double_points::BVector;
pub use line::LineCase;

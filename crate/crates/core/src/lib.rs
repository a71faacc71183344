//! Exact computation of the K-theoretic Fröyshov invariant κ for knots and
//! Seifert homology spheres with involution, and of the 10/8-type bounds built
//! on it.
//!
//! Arithmetic is exact throughout: integers are [`BigInt`], rationals are
//! [`BigRational`]. The algebraic layers are generic over the scalar type; the
//! aliases below fix the concrete choices used by the engines.

pub mod gswf_spectrum;
pub mod interval;
pub mod kappa_engine;
pub mod knot_algebra;
pub mod linalg;
pub mod obstruction_engine;
pub mod qfmt;
pub mod rep_ring;
pub mod scalar;
pub mod seifert_plumbing;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Integer scalar used by every engine.
pub type Z = BigInt;
/// Rational scalar used by every engine.
pub type Q = BigRational;
/// Element of R(ℤ₄) with arbitrary-precision coefficients.
pub type Rep = rep_ring::RepElem<Z>;
/// Integer matrix stored row-major.
pub type ZMatrix = Vec<Vec<Z>>;

/// Shorthand for the rational `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Shorthand for an integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

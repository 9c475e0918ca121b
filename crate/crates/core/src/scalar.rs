//! Scalar abstraction for coordinates, distances, and times.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar used throughout the crate.
///
/// All geometry is written against this trait so the same code runs on
/// `f32` and `f64`. The associated [`Scalar::TOL`] is the absolute
/// tolerance used by every geometric comparison (closed-ball membership,
/// collinearity checks, length identities), chosen per type so that
/// boundary tests stay deterministic.
pub trait Scalar:
    Float + FromPrimitive + Sum + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Absolute tolerance for geometric equality comparisons.
    const TOL: Self;
}

impl Scalar for f64 {
    const TOL: Self = 1e-9;
}

impl Scalar for f32 {
    const TOL: Self = 1e-4;
}

/// Converts an `f64` constant into the scalar type.
pub(crate) fn cast<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("constant representable in scalar type")
}

/// `a == b` within the scalar tolerance.
pub fn approx_eq<S: Scalar>(a: S, b: S) -> bool {
    (a - b).abs() <= S::TOL
}

/// `a <= b` within the scalar tolerance.
pub fn approx_le<S: Scalar>(a: S, b: S) -> bool {
    a <= b + S::TOL
}

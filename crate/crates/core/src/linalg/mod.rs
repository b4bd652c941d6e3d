//! Exact scalars and dense exact linear algebra.

mod fraction_free;
mod gaussian;
mod matrix;
mod scalar;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use fraction_free::rank_fraction_free;
pub use gaussian::GaussianScalar;
pub use matrix::{in_span, same_span, span_basis, Inertia, Matrix, Rref};
pub use scalar::{q, Scalar};

/// The exact fields the engine computes over: ℚ and ℚ(i).
///
/// Division by zero panics; callers test `is_zero` first.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: &Scalar) -> Self;
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

//! Exact arithmetic: Gaussian rationals, sparse multivariate polynomials over
//! them, and unreduced rational functions compared by cross-multiplication.

mod poly;
mod ratfun;
mod scalar;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;
pub use poly::{Monomial, Poly};
pub use ratfun::{poly_substitute, ratfun_eq, RatFun};
pub use scalar::Scalar;

/// Commutative ring with a unit that contains the Gaussian rationals.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Scalar) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_scalar(Scalar::from_int(n))
    }

    fn scale(&self, s: &Scalar) -> Self {
        self.clone() * Self::from_scalar(s.clone())
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    /// Heuristic size used to prefer simple pivots in elimination.
    fn pivot_cost(&self) -> usize {
        0
    }
}

/// Rational from a numerator and a nonzero denominator.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

//! Exact coefficient rings.
//!
//! Every computation in this crate runs over a commutative ring containing
//! the rationals. Two instances are provided: [`Rational`] for numeric runs
//! and [`Polynomial`] (rational coefficients, named indeterminates) for
//! symbolic runs where a single evaluation proves an identity at a given size.
//!
//! Operands of different rings cannot be mixed: the ring is a type parameter
//! everywhere, so such a mix is rejected by the compiler.

mod polynomial;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub use polynomial::{Monomial, ParsePolynomialError, Polynomial, Var};
pub use rational::{ParseRationalError, Rational};

/// A commutative ring with unit containing `Q`.
///
/// Equality is exact structural equality of the canonical representation, so
/// `a == b` iff `(a - b).is_zero()`.
pub trait Ring:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + for<'a> AddAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    /// The image of a rational number under `Q -> R`.
    fn from_rational(q: Rational) -> Self;

    /// Exact division: `Some(q)` with `q * rhs == self`, or `None` when no such
    /// `q` exists (or `rhs` is zero).
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from(v))
    }

    /// `self * rhs` without consuming either operand.
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs
    }

    /// Multiplication by `+1` or `-1`.
    fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }
}

/// `(-1)^e` as a sign.
pub fn parity_sign(e: usize) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_sign_alternates() {
        assert_eq!(parity_sign(0), 1);
        assert_eq!(parity_sign(3), -1);
        assert_eq!(parity_sign(10), 1);
    }

    #[test]
    fn signed_negates_only_on_minus() {
        let q = Rational::new(3, 4);
        assert_eq!(q.clone().signed(1), q);
        assert_eq!(q.clone().signed(-1), -q);
    }
}

//! Exact Grassmann-Berezin calculus with the combinatorics of directed forests
//! and odd cacti.
//!
//! The crate evaluates Berezin integrals of exponentials over an exact ground
//! ring ([`ring::Rational`] or [`ring::Polynomial`]) and compares them with
//! signed sums over combinatorial objects:
//!
//! - [`forest`]: admissible pairs `(F, R)` whose weighted sum gives every
//!   minor `det(A_{I^c, J^c})` of an arbitrary square matrix, with column sums
//!   of `A` acting as root weights;
//! - [`cactus`]: odd cacti whose signed amplitudes sum to the Berezin integral
//!   of `x_i exp(...)` built from antisymmetric tensors of odd arity.
//!
//! Both sides are always computed independently and compared by exact
//! equality.

pub mod cactus;
pub mod error;
pub mod forest;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod perm;
pub mod random;
pub mod ring;

pub use error::{Error, Result};

/// Whether an exhaustive enumeration may exceed its default size limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Guard {
    /// Refuse inputs above the limit.
    #[default]
    Checked,
    /// Run regardless of size.
    Forced,
}

impl Guard {
    pub(crate) fn check(self, what: &'static str, n: usize, limit: usize) -> Result<()> {
        if self == Guard::Checked && n > limit {
            return Err(Error::GuardExceeded { what, n, limit });
        }
        Ok(())
    }
}

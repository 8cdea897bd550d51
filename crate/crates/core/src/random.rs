//! Seedable random inputs with small rational entries.

use rand::Rng;

use crate::grassmann::{GrassmannElement, Mask};
use crate::linalg::{increasing_tuples, AntisymmetricTensor, SquareMatrix, TensorFamily};
use crate::ring::Rational;
use crate::Result;

/// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::new(rng.random_range(-bound..=bound), rng.random_range(1..=bound.max(1)))
}

pub fn matrix(rng: &mut impl Rng, n: usize, bound: i64) -> SquareMatrix<Rational> {
    SquareMatrix::from_fn(n, |_, _| rational(rng, bound))
}

pub fn skew_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> SquareMatrix<Rational> {
    let mut m = SquareMatrix::zero(n);
    for r in 0..n {
        for c in r + 1..n {
            let v = rational(rng, bound);
            m.set(c, r, -v.clone());
            m.set(r, c, v);
        }
    }
    m
}

/// Symmetric weights with zero diagonal.
pub fn symmetric_weights(rng: &mut impl Rng, n: usize, bound: i64) -> SquareMatrix<Rational> {
    let mut m = SquareMatrix::zero(n);
    for r in 0..n {
        for c in r + 1..n {
            let v = rational(rng, bound);
            m.set(c, r, v.clone());
            m.set(r, c, v);
        }
    }
    m
}

pub fn tensor(rng: &mut impl Rng, n: usize, arity: usize, bound: i64) -> Result<AntisymmetricTensor<Rational>> {
    let mut t = AntisymmetricTensor::zero(n, arity)?;
    for key in increasing_tuples(n, arity) {
        t.set(&key, rational(rng, bound))?;
    }
    Ok(t)
}

pub fn family(rng: &mut impl Rng, n: usize, arities: &[usize], bound: i64) -> Result<TensorFamily<Rational>> {
    let mut f = TensorFamily::new(n);
    for &k in arities {
        f.insert(tensor(rng, n, k, bound)?)?;
    }
    Ok(f)
}

/// Element with each basis monomial present with probability `density`,
/// restricted to monomials whose degree passes `keep_degree`.
pub fn grassmann(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    keep_degree: impl Fn(u32) -> bool,
) -> Result<GrassmannElement<Rational>> {
    let full: u64 = 1 << n;
    let mut terms = Vec::new();
    for mask in 0..full {
        let mask = mask as Mask;
        if keep_degree(mask.count_ones()) && rng.random_bool(density) {
            terms.push((mask, rational(rng, 5)));
        }
    }
    GrassmannElement::from_terms(n, terms)
}

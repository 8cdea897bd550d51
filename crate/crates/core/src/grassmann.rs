//! The Grassmann algebra `R[x_1, ..., x_n]`.
//!
//! Elements are sparse maps from generator subsets to coefficients. A subset is
//! an `n`-bit mask (bit `i - 1` set iff `x_i` is present) and stands for the
//! increasing-order monomial `x_{i_1} ... x_{i_p}`, `i_1 < ... < i_p`.
//!
//! Paired variables `psi_i`, `psibar_i` are mapped onto one algebra by the
//! convention `psi_i -> x_{2i-1}`, `psibar_i -> x_{2i}`; see [`psi`],
//! [`psibar`] and [`entangled_order`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{parity_sign, Rational, Ring};

pub type Mask = u32;

/// Hard cap on the number of generators.
pub const MAX_GENERATORS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Sign of `x_S * x_T = sign * x_{S u T}` for disjoint `S`, `T`: the parity of
/// the number of pairs `(s, t)` in `S x T` with `s > t`.
#[inline]
pub fn product_sign(s: Mask, t: Mask) -> i8 {
    let mut rest = t;
    let mut crossings = 0u32;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        crossings += (s >> bit >> 1).count_ones();
    }
    if crossings & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Mask of the generator subset `{i_1, ..., i_p}` (1-based labels).
pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

/// 1-based labels of the generators present in `mask`, increasing.
pub fn indices_of(mask: Mask) -> Vec<usize> {
    (0..Mask::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Generator label of `psi_i` under the pairing convention.
pub fn psi(i: usize) -> usize {
    2 * i - 1
}

/// Generator label of `psibar_i` under the pairing convention.
pub fn psibar(i: usize) -> usize {
    2 * i
}

/// Integration order `(2, 1, 4, 3, ..., 2m, 2m - 1)`, i.e. the entangled
/// measure `dpsibar_1 dpsi_1 ... dpsibar_m dpsi_m`.
pub fn entangled_order(m: usize) -> Vec<usize> {
    (1..=m).flat_map(|i| [psibar(i), psi(i)]).collect()
}

#[derive(Clone, PartialEq)]
pub struct GrassmannElement<R> {
    n: usize,
    terms: BTreeMap<Mask, R>,
}

impl<R: Ring> GrassmannElement<R> {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::GeneratorCount {
                n,
                max: MAX_GENERATORS,
            });
        }
        Ok(GrassmannElement {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(n: usize, c: R) -> Result<Self> {
        let mut out = Self::zero(n)?;
        out.insert(0, c);
        Ok(out)
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::scalar(n, R::one())
    }

    /// The generator `x_i`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        let mut out = Self::zero(n)?;
        out.check_index(i)?;
        out.insert(1 << (i - 1), R::one());
        Ok(out)
    }

    /// `c * x_{i_1} x_{i_2} ... x_{i_p}` for labels in the given (arbitrary)
    /// order; zero if a label repeats.
    pub fn monomial(n: usize, labels: &[usize], c: R) -> Result<Self> {
        let mut out = Self::zero(n)?;
        let mut mask: Mask = 0;
        let mut sign = 1i8;
        for &i in labels {
            out.check_index(i)?;
            let bit = 1 << (i - 1);
            if mask & bit != 0 {
                return Ok(out);
            }
            sign *= product_sign(mask, bit);
            mask |= bit;
        }
        out.insert(mask, c.signed(sign));
        Ok(out)
    }

    /// Builds an element from `(mask, coefficient)` pairs, summing repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mask, R)>) -> Result<Self> {
        let mut out = Self::zero(n)?;
        let full = out.full_mask();
        for (mask, c) in terms {
            if mask & !full != 0 {
                return Err(Error::IndexOutOfRange {
                    index: Mask::BITS as usize - mask.leading_zeros() as usize,
                    n,
                });
            }
            out.insert(mask, c);
        }
        Ok(out)
    }

    fn insert(&mut self, mask: Mask, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::MismatchedGenerators(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> Mask {
        if self.n == Mask::BITS as usize {
            Mask::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms ordered by mask value.
    pub fn terms(&self) -> impl Iterator<Item = (Mask, &R)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, mask: Mask) -> R {
        self.terms.get(&mask).cloned().unwrap_or_else(R::zero)
    }

    /// Degree-zero coefficient.
    pub fn scalar_part(&self) -> R {
        self.coefficient(0)
    }

    /// Coefficient of `x_1 x_2 ... x_n`, which is `int dx_n ... dx_1 f`.
    pub fn top_coefficient(&self) -> R {
        self.coefficient(self.full_mask())
    }

    pub fn parity(&self) -> Parity {
        let even = self.terms.keys().all(|m| m.count_ones() % 2 == 0);
        let odd = self.terms.keys().all(|m| m.count_ones() % 2 == 1);
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            (false, false) => Parity::Mixed,
        }
    }

    /// Homogeneous component of the given degree.
    pub fn degree_part(&self, degree: u32) -> Self {
        GrassmannElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == degree)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = GrassmannElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&m, v) in &self.terms {
            out.insert(m, v.mul_ref(c));
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.insert(m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.insert(m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = GrassmannElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&s, a) in &self.terms {
            for (&t, b) in &other.terms {
                if s & t != 0 {
                    continue;
                }
                out.insert(s | t, a.mul_ref(b).signed(product_sign(s, t)));
            }
        }
        Ok(out)
    }

    /// `exp(f) = sum_p f^p / p!` for even `f` without constant term; the
    /// series is cut as soon as a power vanishes.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.contains_key(&0) {
            return Err(Error::ConstantTerm);
        }
        match self.parity() {
            Parity::Even => {}
            p => return Err(Error::NotEven(p)),
        }
        let mut result = Self::one(self.n)?;
        let mut power = Self::one(self.n)?;
        for p in 1.. {
            power = power.checked_mul(self)?;
            if power.is_zero() {
                break;
            }
            let inv = R::from_rational(Rational::inverse_factorial(p));
            result = result.checked_add(&power.scale(&inv))?;
        }
        Ok(result)
    }

    /// The odd derivation `d/dx_i` acting from the left on increasing
    /// monomials: removes `x_i` with sign `(-1)^(alpha - 1)`, `alpha` its
    /// position, and kills monomials without `x_i`.
    pub fn derive(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        let bit: Mask = 1 << (i - 1);
        let below = bit - 1;
        let mut out = GrassmannElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let sign = parity_sign((m & below).count_ones() as usize);
            out.insert(m ^ bit, c.clone().signed(sign));
        }
        Ok(out)
    }

    /// `int dx_{t(1)} ... dx_{t(p)} f`, the composite
    /// `d/dx_{t(1)} o ... o d/dx_{t(p)}` (rightmost applied first).
    pub fn berezin_integrate(&self, order: &[usize]) -> Result<Self> {
        let mut seen: Mask = 0;
        for &i in order {
            self.check_index(i)?;
            let bit = 1 << (i - 1);
            if seen & bit != 0 {
                return Err(Error::RepeatedIndex(i));
            }
            seen |= bit;
        }
        let mut out = self.clone();
        for &i in order.iter().rev() {
            out = out.derive(i)?;
        }
        Ok(out)
    }
}

impl<R: Ring> Add for &GrassmannElement<R> {
    type Output = GrassmannElement<R>;

    /// # Panics
    ///
    /// Panics if the generator counts differ; see [`GrassmannElement::checked_add`].
    fn add(self, rhs: Self) -> GrassmannElement<R> {
        self.checked_add(rhs).expect("generator count mismatch")
    }
}

impl<R: Ring> Sub for &GrassmannElement<R> {
    type Output = GrassmannElement<R>;

    /// # Panics
    ///
    /// Panics if the generator counts differ.
    fn sub(self, rhs: Self) -> GrassmannElement<R> {
        self.checked_sub(rhs).expect("generator count mismatch")
    }
}

impl<R: Ring> Mul for &GrassmannElement<R> {
    type Output = GrassmannElement<R>;

    /// # Panics
    ///
    /// Panics if the generator counts differ.
    fn mul(self, rhs: Self) -> GrassmannElement<R> {
        self.checked_mul(rhs).expect("generator count mismatch")
    }
}

impl<R: Ring> Neg for &GrassmannElement<R> {
    type Output = GrassmannElement<R>;

    fn neg(self) -> GrassmannElement<R> {
        GrassmannElement {
            n: self.n,
            terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect(),
        }
    }
}

/// Terms sorted by degree then mask, e.g. `(3) + (-1/2) x1^x3`.
impl<R: Ring> fmt::Display for GrassmannElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut masks: Vec<Mask> = self.terms.keys().copied().collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        for (k, m) in masks.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", self.terms[&m])?;
            if m != 0 {
                let wedge: Vec<String> = indices_of(m).iter().map(|i| format!("x{i}")).collect();
                write!(f, " {}", wedge.join("^"))?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for GrassmannElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannElement[n={}]({})", self.n, self)
    }
}

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::sequence_sign;
use crate::ring::{Polynomial, Ring};

/// Completely antisymmetric tensor `y_{a_1 ... a_k}` over labels `1..=n`.
///
/// Only strictly increasing keys are stored; every other lookup is derived
/// from them by the sorting sign, and tuples with a repeated label read as
/// zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetricTensor<R> {
    n: usize,
    arity: usize,
    values: BTreeMap<Vec<usize>, R>,
}

impl<R: Ring> AntisymmetricTensor<R> {
    pub fn zero(n: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArity {
                arity,
                reason: "arity must be positive",
            });
        }
        Ok(AntisymmetricTensor {
            n,
            arity,
            values: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn check_tuple(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.arity {
            return Err(Error::DimensionMismatch {
                expected: self.arity,
                found: idx.len(),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > self.n) {
            return Err(Error::IndexOutOfRange { index: bad, n: self.n });
        }
        Ok(())
    }

    /// Sets the entry at `idx` (any order); the stored canonical value is
    /// adjusted by the sorting sign. A repeated label only accepts zero.
    pub fn set(&mut self, idx: &[usize], value: R) -> Result<()> {
        self.check_tuple(idx)?;
        let Some(sign) = sequence_sign(idx) else {
            if value.is_zero() {
                return Ok(());
            }
            let mut sorted = idx.to_vec();
            sorted.sort_unstable();
            let rep = sorted.windows(2).find(|w| w[0] == w[1]).map_or(0, |w| w[0]);
            return Err(Error::RepeatedIndex(rep));
        };
        let mut key = idx.to_vec();
        key.sort_unstable();
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value.signed(sign));
        }
        Ok(())
    }

    /// `y_idx` for an arbitrary tuple.
    ///
    /// # Panics
    ///
    /// Panics if the tuple has the wrong length or an out-of-range label.
    pub fn get(&self, idx: &[usize]) -> R {
        self.check_tuple(idx).expect("tensor lookup");
        match sequence_sign(idx) {
            None => R::zero(),
            Some(sign) => {
                let mut key = idx.to_vec();
                key.sort_unstable();
                self.values
                    .get(&key)
                    .map_or_else(R::zero, |v| v.clone().signed(sign))
            }
        }
    }

    /// Stored entries, keys strictly increasing.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &R)> {
        self.values.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `A_{a_2 ... a_k} = sum_{a_1} y_{a_1 a_2 ... a_k}`.
    pub fn contract_first(&self) -> Result<Self> {
        let mut out = Self::zero(self.n, self.arity - 1)?;
        let mut acc: BTreeMap<Vec<usize>, R> = BTreeMap::new();
        for (key, v) in &self.values {
            for p in 0..key.len() {
                let mut rest = key.clone();
                rest.remove(p);
                let term = v.clone().signed(if p % 2 == 0 { 1 } else { -1 });
                *acc.entry(rest).or_insert_with(R::zero) += term;
            }
        }
        out.values = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(out)
    }

    /// The tensor with label `i` forbidden; surviving labels are renumbered
    /// `1..=n-1` in increasing order.
    pub fn delete_index(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let values = self
            .values
            .iter()
            .filter(|(k, _)| !k.contains(&i))
            .map(|(k, v)| {
                let relabelled = k.iter().map(|&a| if a > i { a - 1 } else { a }).collect();
                (relabelled, v.clone())
            })
            .collect();
        Ok(AntisymmetricTensor {
            n: self.n - 1,
            arity: self.arity,
            values,
        })
    }
}

/// Strictly increasing `k`-subsets of `1..=n`, lexicographic.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

impl AntisymmetricTensor<Polynomial> {
    /// Generic tensor: one indeterminate `{prefix}_{a_1}_..._{a_k}` per
    /// increasing tuple.
    pub fn generic(n: usize, arity: usize, prefix: &str) -> Result<Self> {
        let mut t = Self::zero(n, arity)?;
        for key in increasing_tuples(n, arity) {
            let name = std::iter::once(prefix.to_string())
                .chain(key.iter().map(|a| a.to_string()))
                .collect::<Vec<_>>()
                .join("_");
            t.values.insert(key, Polynomial::var(&name));
        }
        Ok(t)
    }
}

/// One antisymmetric tensor per odd arity `k >= 3`, all over the same labels.
/// Arities without a tensor are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorFamily<R> {
    n: usize,
    tensors: BTreeMap<usize, AntisymmetricTensor<R>>,
}

impl<R: Ring> TensorFamily<R> {
    pub fn new(n: usize) -> Self {
        TensorFamily {
            n,
            tensors: BTreeMap::new(),
        }
    }

    pub fn from_tensors(n: usize, tensors: impl IntoIterator<Item = AntisymmetricTensor<R>>) -> Result<Self> {
        let mut fam = Self::new(n);
        for t in tensors {
            fam.insert(t)?;
        }
        Ok(fam)
    }

    pub fn insert(&mut self, t: AntisymmetricTensor<R>) -> Result<()> {
        if t.arity < 3 || t.arity.is_multiple_of(2) {
            return Err(Error::InvalidArity {
                arity: t.arity,
                reason: "family tensors need odd arity >= 3",
            });
        }
        if t.n != self.n {
            return Err(Error::MixedGroundSets(self.n, t.n));
        }
        self.tensors.insert(t.arity, t);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, arity: usize) -> Option<&AntisymmetricTensor<R>> {
        self.tensors.get(&arity)
    }

    pub fn arities(&self) -> Vec<usize> {
        self.tensors.keys().copied().collect()
    }

    pub fn tensors(&self) -> impl Iterator<Item = &AntisymmetricTensor<R>> {
        self.tensors.values()
    }
}

impl TensorFamily<Polynomial> {
    pub fn generic(n: usize, arities: &[usize], prefix: &str) -> Result<Self> {
        let mut fam = Self::new(n);
        for &k in arities {
            fam.insert(AntisymmetricTensor::generic(n, k, prefix)?)?;
        }
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rational;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn antisymmetric_lookup() {
        let mut t = AntisymmetricTensor::zero(4, 3).unwrap();
        t.set(&[3, 1, 2], q(5)).unwrap();
        assert_eq!(t.get(&[1, 2, 3]), q(5));
        assert_eq!(t.get(&[2, 1, 3]), q(-5));
        assert_eq!(t.get(&[2, 3, 1]), q(5));
        assert_eq!(t.get(&[1, 1, 3]), q(0));
        assert_eq!(t.set(&[1, 1, 2], q(1)), Err(Error::RepeatedIndex(1)));
        assert!(t.set(&[1, 1, 2], q(0)).is_ok());
        assert!(t.set(&[1, 2, 5], q(1)).is_err());
        assert!(t.set(&[1, 2], q(1)).is_err());
    }

    #[test]
    fn contraction_matches_definition() {
        let y = AntisymmetricTensor::generic(4, 3, "ct").unwrap();
        let a = y.contract_first().unwrap();
        for b in 1..=4 {
            for c in 1..=4 {
                let mut expected = Polynomial::zero();
                for first in 1..=4 {
                    expected += y.get(&[first, b, c]);
                }
                assert_eq!(a.get(&[b, c]), expected);
            }
        }
    }

    #[test]
    fn deletion_relabels() {
        let mut t = AntisymmetricTensor::zero(5, 2).unwrap();
        t.set(&[1, 4], q(2)).unwrap();
        t.set(&[2, 5], q(3)).unwrap();
        t.set(&[3, 4], q(7)).unwrap();
        let d = t.delete_index(3).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.get(&[1, 3]), q(2));
        assert_eq!(d.get(&[2, 4]), q(3));
        assert_eq!(d.entries().count(), 2);
    }

    #[test]
    fn family_validation() {
        let mut fam = TensorFamily::<Rational>::new(5);
        assert!(fam.insert(AntisymmetricTensor::zero(5, 4).unwrap()).is_err());
        assert!(fam.insert(AntisymmetricTensor::zero(5, 1).unwrap()).is_err());
        assert_eq!(
            fam.insert(AntisymmetricTensor::zero(6, 3).unwrap()),
            Err(Error::MixedGroundSets(5, 6))
        );
        fam.insert(AntisymmetricTensor::zero(5, 3).unwrap()).unwrap();
        assert_eq!(fam.arities(), vec![3]);
    }

    #[test]
    fn increasing_tuple_counts() {
        assert_eq!(increasing_tuples(5, 3).len(), 10);
        assert_eq!(increasing_tuples(3, 3), vec![vec![1, 2, 3]]);
        assert!(increasing_tuples(2, 3).is_empty());
    }
}

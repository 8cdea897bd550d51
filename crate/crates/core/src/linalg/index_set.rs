use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing set of 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts `labels`; rejects label 0 and repeats.
    pub fn new(mut labels: Vec<usize>) -> Result<Self> {
        labels.sort_unstable();
        if labels.first() == Some(&0) {
            return Err(Error::IndexOutOfRange { index: 0, n: 0 });
        }
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedIndex(w[0]));
        }
        Ok(IndexSet(labels))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `[n] = {1, ..., n}`.
    pub fn range(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&max) if max > n => Err(Error::IndexOutOfRange { index: max, n }),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    /// Position of `label` in increasing order (0-based).
    pub fn position(&self, label: usize) -> Option<usize> {
        self.0.binary_search(&label).ok()
    }

    /// Sum of the labels.
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn complement(&self, n: usize) -> Self {
        IndexSet((1..=n).filter(|&i| !self.contains(i)).collect())
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_checked() {
        let s = IndexSet::new(vec![5, 2, 9]).unwrap();
        assert_eq!(s.as_slice(), &[2, 5, 9]);
        assert_eq!(s.sum(), 16);
        assert_eq!(s.position(5), Some(1));
        assert_eq!(IndexSet::new(vec![1, 1]), Err(Error::RepeatedIndex(1)));
        assert!(IndexSet::new(vec![0]).is_err());
        assert_eq!(s.check_within(8), Err(Error::IndexOutOfRange { index: 9, n: 8 }));
        assert_eq!(s.complement(6).as_slice(), &[1, 3, 4, 6]);
    }
}

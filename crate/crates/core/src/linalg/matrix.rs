use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::linalg::IndexSet;
use crate::ring::{Polynomial, Ring};

/// Dense `n x n` matrix. `m[(r, c)]` uses 0-based positions; everything that
/// talks about index *labels* (index sets, minors) is 1-based.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<R> {
    n: usize,
    entries: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Ragged);
        }
        Ok(SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { R::one() } else { R::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.entries[r * self.n + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].clone())
    }

    /// `B_j = sum_i A_ij` for every column `j`.
    pub fn column_sums(&self) -> Vec<R> {
        (0..self.n)
            .map(|c| {
                let mut s = R::zero();
                for r in 0..self.n {
                    s += &self[(r, c)];
                }
                s
            })
            .collect()
    }

    /// `A_{I^c, J^c}`: rows labelled by `rows` and columns labelled by `cols`
    /// erased.
    pub fn submatrix_without(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        rows.check_within(self.n)?;
        cols.check_within(self.n)?;
        if rows.len() != cols.len() {
            return Err(Error::IndexSetSizes(rows.len(), cols.len()));
        }
        let keep_r: Vec<usize> = (0..self.n).filter(|&r| !rows.contains(r + 1)).collect();
        let keep_c: Vec<usize> = (0..self.n).filter(|&c| !cols.contains(c + 1)).collect();
        Ok(Self::from_fn(keep_r.len(), |r, c| {
            self[(keep_r[r], keep_c[c])].clone()
        }))
    }

    pub fn check_skew_symmetric(&self) -> Result<()> {
        for r in 0..self.n {
            for c in r..self.n {
                if !(self[(r, c)].clone() + &self[(c, r)]).is_zero() {
                    return Err(Error::NotSkewSymmetric { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(())
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for r in 0..self.n {
            for c in r + 1..self.n {
                if self[(r, c)] != self[(c, r)] {
                    return Err(Error::NotSymmetric { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(())
    }

    /// Laplacian `L = D - W` of a symmetric weight matrix with zero diagonal.
    pub fn laplacian(weights: &Self) -> Result<Self> {
        weights.check_symmetric()?;
        if let Some(i) = (0..weights.n).find(|&i| !weights[(i, i)].is_zero()) {
            return Err(Error::NonzeroDiagonal(i + 1));
        }
        let sums = weights.column_sums();
        Ok(Self::from_fn(weights.n, |r, c| {
            if r == c {
                sums[r].clone()
            } else {
                -weights[(r, c)].clone()
            }
        }))
    }

    /// Unit-weight adjacency matrix of the complete graph `K_n`.
    pub fn complete_graph(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { R::zero() } else { R::one() })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SquareMatrix<S> {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl SquareMatrix<Polynomial> {
    /// Fully generic matrix with indeterminate `{prefix}_{i}_{j}` at row `i`,
    /// column `j` (1-based).
    pub fn generic(n: usize, prefix: &str) -> Self {
        Self::from_fn(n, |r, c| Polynomial::var(&format!("{prefix}_{}_{}", r + 1, c + 1)))
    }

    /// Generic symmetric weights `{prefix}_{i}_{j}` (`i < j`), zero diagonal.
    pub fn generic_symmetric_weights(n: usize, prefix: &str) -> Self {
        Self::from_fn(n, |r, c| {
            if r == c {
                Polynomial::zero()
            } else {
                let (a, b) = (r.min(c) + 1, r.max(c) + 1);
                Polynomial::var(&format!("{prefix}_{a}_{b}"))
            }
        })
    }

    /// Generic skew-symmetric matrix: `{prefix}_{i}_{j}` above the diagonal.
    pub fn generic_skew(n: usize, prefix: &str) -> Self {
        Self::from_fn(n, |r, c| match r.cmp(&c) {
            std::cmp::Ordering::Equal => Polynomial::zero(),
            std::cmp::Ordering::Less => Polynomial::var(&format!("{prefix}_{}_{}", r + 1, c + 1)),
            std::cmp::Ordering::Greater => {
                -Polynomial::var(&format!("{prefix}_{}_{}", c + 1, r + 1))
            }
        })
    }
}

impl<R> Index<(usize, usize)> for SquareMatrix<R> {
    type Output = R;

    fn index(&self, (r, c): (usize, usize)) -> &R {
        assert!(r < self.n && c < self.n, "matrix position out of range");
        &self.entries[r * self.n + c]
    }
}

impl<R: Ring> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

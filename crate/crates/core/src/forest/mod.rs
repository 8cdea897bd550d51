//! Directed forests and admissible pairs `(F, R)`.
//!
//! Fix `I = {i_1 < ... < i_p}` and `J = {j_1 < ... < j_p}` in `[n]`. A pair
//! `(F, R)` of a directed forest and a root set is admissible when every
//! connected component `C` of `F` is
//!
//! - *type I*: `|C n I| = |C n J| = 1`, no element of `R`, edges oriented away
//!   from the `j` in `C`; or
//! - *type II*: disjoint from `I u J`, exactly one element `r` of `R`, edges
//!   oriented away from `r`.
//!
//! Summing `sign(F) prod_{r in R} B_r prod_{(u,v) in F} (-A_uv)` over these
//! pairs, with `B` the column sums of `A`, gives the signed minor
//! `(-1)^(sum I + sum J) det(A_{I^c, J^c})`; see [`theorem1_rhs`].

mod enumerate;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::linalg::{det, IndexSet, SquareMatrix};
use crate::perm::sequence_sign;
use crate::ring::{parity_sign, Ring};
use crate::Guard;

pub use enumerate::FOREST_LIMIT;

/// Directed edge `(u, v)`, oriented from `u` to `v`.
pub type Edge = (usize, usize);

/// Why a candidate `(F, R)` is not admissible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rejection {
    /// An edge endpoint or root outside `1..=n`.
    OutOfRange(usize),
    SelfLoop(usize),
    RepeatedEdge(Edge),
    /// Both `(u, v)` and `(v, u)` are present.
    ReversedPair(Edge),
    /// This edge closes a cycle in the undirected support.
    Cycle(Edge),
    /// A component meets `I` or `J` but not in exactly one element of each.
    ComponentContent(Vec<usize>),
    /// A component has the wrong number of roots: a type I component holds a
    /// root, or a type II component does not hold exactly one.
    RootPlacement(Vec<usize>),
    /// This edge points towards the root of its component.
    Orientation(Edge),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::OutOfRange(v) => write!(f, "label {v} out of range"),
            Rejection::SelfLoop(v) => write!(f, "self-loop at {v}"),
            Rejection::RepeatedEdge((u, v)) => write!(f, "edge ({u}, {v}) listed twice"),
            Rejection::ReversedPair((u, v)) => write!(f, "both ({u}, {v}) and ({v}, {u}) present"),
            Rejection::Cycle((u, v)) => write!(f, "edge ({u}, {v}) closes a cycle"),
            Rejection::ComponentContent(c) => write!(f, "component {c:?} has bad I/J content"),
            Rejection::RootPlacement(c) => write!(f, "component {c:?} has misplaced roots"),
            Rejection::Orientation((u, v)) => write!(f, "edge ({u}, {v}) points towards its root"),
        }
    }
}

/// Set of directed edges on `[n]` whose undirected support is a forest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedForest {
    n: usize,
    edges: Vec<Edge>,
}

impl DirectedForest {
    pub fn new(n: usize, edges: &[Edge]) -> std::result::Result<Self, Rejection> {
        let mut seen = BTreeSet::new();
        let mut uf = UnionFind::new(n + 1);
        for &(u, v) in edges {
            if let Some(&bad) = [u, v].iter().find(|&&x| x == 0 || x > n) {
                return Err(Rejection::OutOfRange(bad));
            }
            if u == v {
                return Err(Rejection::SelfLoop(u));
            }
            if seen.contains(&(u, v)) {
                return Err(Rejection::RepeatedEdge((u, v)));
            }
            if seen.contains(&(v, u)) {
                return Err(Rejection::ReversedPair((v, u)));
            }
            seen.insert((u, v));
            if !uf.union(u, v) {
                return Err(Rejection::Cycle((u, v)));
            }
        }
        Ok(DirectedForest {
            n,
            edges: seen.into_iter().collect(),
        })
    }

    /// Trusted constructor for edges already known to form a forest.
    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(DirectedForest::new(n, &edges).is_ok());
        DirectedForest { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in increasing lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The partition `Pi_F` of `[n]`: sorted blocks, ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n + 1);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n + 1];
        for v in 1..=self.n {
            let rep = uf.find(v);
            if slot[rep] == usize::MAX {
                slot[rep] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[rep]].push(v);
        }
        blocks
    }
}

/// `Pi_F` for a forest on `[n]`.
pub fn components(forest: &DirectedForest) -> Vec<Vec<usize>> {
    forest.components()
}

/// An admissible pair together with its matching permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    forest: DirectedForest,
    roots: IndexSet,
    sigma: Vec<usize>,
    signature: i8,
}

impl AdmissiblePair {
    pub fn forest(&self) -> &DirectedForest {
        &self.forest
    }

    pub fn roots(&self) -> &IndexSet {
        &self.roots
    }

    /// `sigma_F` in one-line notation on `1..=p`: `j_a` shares its component
    /// with `i_{sigma(a)}`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `sign(sigma_F)`.
    pub fn signature(&self) -> i8 {
        self.signature
    }

    /// `sign(F) prod_{r in R} B_r prod_{(u,v) in F} (-A_uv)`, without the
    /// global `(-1)^(sum I + sum J)`.
    pub fn weight<R: Ring>(&self, a: &SquareMatrix<R>, column_sums: &[R]) -> R {
        let mut w = R::one();
        for r in self.roots.iter() {
            w = w * &column_sums[r - 1];
        }
        for &(u, v) in self.forest.edges() {
            w = w * &a[(u - 1, v - 1)];
        }
        w.signed(self.signature * parity_sign(self.forest.len()))
    }
}

/// The data `(n, I, J)` that admissibility refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestProblem {
    n: usize,
    rows: IndexSet,
    cols: IndexSet,
}

impl ForestProblem {
    /// `rows` is `I`, `cols` is `J`. `p = |I| = 0` is accepted; the sum then
    /// runs over rooted spanning forests and yields `det(A)`.
    pub fn new(n: usize, rows: IndexSet, cols: IndexSet) -> Result<Self> {
        rows.check_within(n)?;
        cols.check_within(n)?;
        if rows.len() != cols.len() {
            return Err(Error::IndexSetSizes(rows.len(), cols.len()));
        }
        Ok(ForestProblem { n, rows, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &IndexSet {
        &self.rows
    }

    pub fn cols(&self) -> &IndexSet {
        &self.cols
    }

    /// `(-1)^(sum I + sum J)`.
    pub fn global_sign(&self) -> i8 {
        parity_sign(self.rows.sum() + self.cols.sum())
    }

    /// Checks every admissibility clause and, on success, computes `sigma_F`.
    pub fn check(&self, edges: &[Edge], roots: &IndexSet) -> std::result::Result<AdmissiblePair, Rejection> {
        let forest = DirectedForest::new(self.n, edges)?;
        if let Some(bad) = roots.iter().find(|&r| r > self.n) {
            return Err(Rejection::OutOfRange(bad));
        }
        let mut tree_roots = Vec::new();
        for block in forest.components() {
            let in_rows: Vec<usize> = block.iter().copied().filter(|&v| self.rows.contains(v)).collect();
            let in_cols: Vec<usize> = block.iter().copied().filter(|&v| self.cols.contains(v)).collect();
            let in_roots: Vec<usize> = block.iter().copied().filter(|&v| roots.contains(v)).collect();
            match (in_rows.len(), in_cols.len()) {
                (1, 1) if in_roots.is_empty() => tree_roots.push(in_cols[0]),
                (0, 0) if in_roots.len() == 1 => tree_roots.push(in_roots[0]),
                (1, 1) | (0, 0) => return Err(Rejection::RootPlacement(block)),
                _ => return Err(Rejection::ComponentContent(block)),
            }
        }
        let depth = depths(self.n, forest.edges(), &tree_roots);
        if let Some(&e) = forest.edges().iter().find(|&&(u, v)| depth[v] != depth[u] + 1) {
            return Err(Rejection::Orientation(e));
        }
        Ok(self.pair(forest, roots.clone()))
    }

    /// Builds the pair for a forest already known to be admissible.
    fn pair(&self, forest: DirectedForest, roots: IndexSet) -> AdmissiblePair {
        let comps = forest.components();
        let mut owner = vec![0usize; self.n + 1];
        for (c, block) in comps.iter().enumerate() {
            for &v in block {
                owner[v] = c;
            }
        }
        let sigma: Vec<usize> = self
            .cols
            .iter()
            .map(|j| {
                let pos = self
                    .rows
                    .iter()
                    .position(|i| owner[i] == owner[j])
                    .expect("admissible component holds one element of I");
                pos + 1
            })
            .collect();
        let signature = sequence_sign(&sigma).expect("sigma_F is a permutation");
        AdmissiblePair {
            forest,
            roots,
            sigma,
            signature,
        }
    }

    /// Every admissible pair exactly once, sorted by edge list then roots.
    pub fn enumerate(&self, guard: Guard) -> Result<Vec<AdmissiblePair>> {
        let mut out = Vec::new();
        self.for_each(guard, |p| out.push(p.clone()))?;
        out.sort_by(|a, b| {
            (a.forest.edges(), a.roots.as_slice()).cmp(&(b.forest.edges(), b.roots.as_slice()))
        });
        Ok(out)
    }

    /// Visits every admissible pair exactly once, in a fixed but unsorted order.
    pub fn for_each(&self, guard: Guard, visit: impl FnMut(&AdmissiblePair)) -> Result<()> {
        guard.check("admissible pair enumeration", self.n, FOREST_LIMIT)?;
        enumerate::run(self, visit);
        Ok(())
    }

    /// The right-hand side `(-1)^(sum I + sum J) sum_{(F,R)} weight(F, R)`.
    pub fn rhs<R: Ring>(&self, a: &SquareMatrix<R>, guard: Guard) -> Result<R> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        let sums = a.column_sums();
        let mut total = R::zero();
        self.for_each(guard, |p| total += p.weight(a, &sums))?;
        Ok(total.signed(self.global_sign()))
    }
}

/// BFS depth of every vertex below its component root (index 0 unused).
fn depths(n: usize, edges: &[Edge], roots: &[usize]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut depth = vec![usize::MAX; n + 1];
    let mut queue = VecDeque::new();
    for &r in roots {
        depth[r] = 0;
        queue.push_back(r);
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    depth
}

pub fn check_admissible(
    n: usize,
    edges: &[Edge],
    roots: &IndexSet,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<std::result::Result<AdmissiblePair, Rejection>> {
    Ok(ForestProblem::new(n, rows.clone(), cols.clone())?.check(edges, roots))
}

pub fn enumerate_admissible(n: usize, rows: &IndexSet, cols: &IndexSet, guard: Guard) -> Result<Vec<AdmissiblePair>> {
    ForestProblem::new(n, rows.clone(), cols.clone())?.enumerate(guard)
}

/// `(-1)^(sum I + sum J) sum_{(F,R)} sign(F) prod_{r in R} B_r prod_{(u,v) in F} (-A_uv)`.
pub fn theorem1_rhs<R: Ring>(a: &SquareMatrix<R>, rows: &IndexSet, cols: &IndexSet, guard: Guard) -> Result<R> {
    ForestProblem::new(a.n(), rows.clone(), cols.clone())?.rhs(a, guard)
}

/// Weighted spanning-tree count: the principal minor of the Laplacian of a
/// symmetric, zero-diagonal weight matrix, obtained by erasing row and
/// column 1.
pub fn spanning_tree_count<R: Ring>(weights: &SquareMatrix<R>) -> Result<R> {
    if weights.n() == 0 {
        return Err(Error::IndexOutOfRange { index: 1, n: 0 });
    }
    let l = SquareMatrix::laplacian(weights)?;
    let one = IndexSet::new(vec![1])?;
    Ok(det(&l.submatrix_without(&one, &one)?))
}

/// A worked example: `n = 16`, `I = {3, 7}`, `J = {2, 8}`, `R = {13, 16}`
/// with a twelve-edge forest whose signature is `-1`.
pub mod example {
    pub const N: usize = 16;
    pub const ROWS: [usize; 2] = [3, 7];
    pub const COLS: [usize; 2] = [2, 8];
    pub const ROOTS: [usize; 2] = [13, 16];
    pub const EDGES: [(usize, usize); 12] = [
        (2, 4),
        (4, 1),
        (4, 7),
        (6, 5),
        (6, 3),
        (9, 6),
        (8, 9),
        (9, 10),
        (12, 11),
        (13, 12),
        (13, 14),
        (13, 15),
    ];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Polynomial, Rational};

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_components() {
        let empty = DirectedForest::new(3, &[]).unwrap();
        assert_eq!(empty.components(), vec![vec![1], vec![2], vec![3]]);
        let one = DirectedForest::new(2, &[(1, 2)]).unwrap();
        assert_eq!(one.components(), vec![vec![1, 2]]);
    }

    #[test]
    fn worked_example() {
        let p = ForestProblem::new(example::N, set(&example::ROWS), set(&example::COLS)).unwrap();
        let pair = p.check(&example::EDGES, &set(&example::ROOTS)).unwrap();
        assert_eq!(pair.signature(), -1);
        assert_eq!(pair.sigma(), &[2, 1]);
        assert_eq!(
            pair.forest().components(),
            vec![
                vec![1, 2, 4, 7],
                vec![3, 5, 6, 8, 9, 10],
                vec![11, 12, 13, 14, 15],
                vec![16]
            ]
        );
    }

    #[test]
    fn structural_rejections() {
        let p = ForestProblem::new(3, set(&[1]), set(&[1])).unwrap();
        let none = IndexSet::empty();
        assert_eq!(p.check(&[(1, 2), (2, 1)], &none), Err(Rejection::ReversedPair((1, 2))));
        assert_eq!(p.check(&[(1, 1)], &none), Err(Rejection::SelfLoop(1)));
        assert_eq!(p.check(&[(1, 2), (1, 2)], &none), Err(Rejection::RepeatedEdge((1, 2))));
        assert_eq!(
            p.check(&[(1, 2), (2, 3), (3, 1)], &none),
            Err(Rejection::Cycle((3, 1)))
        );
        assert_eq!(p.check(&[(1, 4)], &none), Err(Rejection::OutOfRange(4)));
    }

    #[test]
    fn admissibility_rejections() {
        let p = ForestProblem::new(3, set(&[1]), set(&[2])).unwrap();
        // type I component {1, 2} must be oriented away from j = 2
        assert_eq!(p.check(&[(1, 2)], &set(&[3])), Err(Rejection::Orientation((1, 2))));
        assert!(p.check(&[(2, 1)], &set(&[3])).is_ok());
        // i and j in different components
        assert_eq!(
            p.check(&[(2, 3)], &IndexSet::empty()),
            Err(Rejection::ComponentContent(vec![1]))
        );
        // type II component {3} without root, and a root inside a type I block
        assert_eq!(p.check(&[(2, 1)], &IndexSet::empty()), Err(Rejection::RootPlacement(vec![3])));
        assert_eq!(
            p.check(&[(2, 1)], &set(&[1, 3])),
            Err(Rejection::RootPlacement(vec![1, 2]))
        );
        // type II edges away from the root
        let q = ForestProblem::new(3, set(&[1]), set(&[1])).unwrap();
        assert!(q.check(&[(3, 2)], &set(&[3])).is_ok());
        assert_eq!(q.check(&[(3, 2)], &set(&[2])), Err(Rejection::Orientation((3, 2))));
    }

    #[test]
    fn single_vertex() {
        let pairs = enumerate_admissible(1, &set(&[1]), &set(&[1]), Guard::Checked).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].forest().is_empty() && pairs[0].roots().is_empty());
        assert_eq!(pairs[0].signature(), 1);
    }

    #[test]
    fn two_vertices() {
        let pairs = enumerate_admissible(2, &set(&[1]), &set(&[1]), Guard::Checked).unwrap();
        let shapes: Vec<(Vec<Edge>, Vec<usize>)> = pairs
            .iter()
            .map(|p| (p.forest().edges().to_vec(), p.roots().as_slice().to_vec()))
            .collect();
        assert_eq!(shapes, vec![(vec![], vec![2]), (vec![(1, 2)], vec![])]);
    }

    #[test]
    fn generic_small_minors() {
        for n in 1..=3 {
            let a = SquareMatrix::generic(n, "fa");
            for p in 1..=n {
                for rows in crate::linalg::increasing_tuples(n, p) {
                    for cols in crate::linalg::increasing_tuples(n, p) {
                        let (i, j) = (set(&rows), set(&cols));
                        let lhs = crate::linalg::minor_det(&a, &i, &j).unwrap();
                        assert_eq!(theorem1_rhs(&a, &i, &j, Guard::Checked).unwrap(), lhs);
                    }
                }
            }
        }
    }

    #[test]
    fn empty_index_sets_give_determinant() {
        let a = SquareMatrix::<Polynomial>::generic(3, "fz");
        let e = IndexSet::empty();
        assert_eq!(theorem1_rhs(&a, &e, &e, Guard::Checked).unwrap(), det(&a));
    }

    #[test]
    fn guard_limits() {
        let p = ForestProblem::new(10, set(&[1]), set(&[1])).unwrap();
        assert!(matches!(p.for_each(Guard::Checked, |_| {}), Err(Error::GuardExceeded { .. })));
        assert_eq!(
            ForestProblem::new(3, set(&[1]), set(&[1, 2])),
            Err(Error::IndexSetSizes(1, 2))
        );
    }

    #[test]
    fn spanning_trees() {
        let k3 = SquareMatrix::<Rational>::complete_graph(3);
        assert_eq!(spanning_tree_count(&k3).unwrap(), Rational::from(3));
        let k4 = SquareMatrix::<Rational>::complete_graph(4);
        assert_eq!(spanning_tree_count(&k4).unwrap(), Rational::from(16));
        let path = SquareMatrix::from_fn(3, |r, c| {
            Rational::from(i64::from(r.abs_diff(c) == 1))
        });
        assert_eq!(spanning_tree_count(&path).unwrap(), Rational::from(1));
        let asym = SquareMatrix::from_fn(2, |r, c| Rational::from((r < c) as i64));
        assert!(spanning_tree_count(&asym).is_err());
    }
}

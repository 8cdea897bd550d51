//! Odd cacti with their refinements and signed amplitudes.
//!
//! A set `A` of odd subsets of `[n]` (each of size at least 3) is a cactus when
//! the bipartite incidence graph between blocks and `[n]` is a tree spanning
//! `[n]`. A refined cactus replaces each block by an ordering of it. For a
//! global root `i`, each sequence `a` has a local root `a_s`, the first vertex
//! on the tree path from the block towards `i`, and a circulation
//! `(a_{s+1}, ..., a_k, a_1, ..., a_{s-1})`. Writing `i` followed by all the
//! circulations gives a permutation `pi` of `[n]`; the amplitude is
//! `sign(pi) prod_a y_a`, and it depends only on the underlying cactus.

mod enumerate;
mod theorem;

use std::collections::VecDeque;
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::linalg::TensorFamily;
use crate::perm::{is_permutation_of_range, sequence_sign};
use crate::ring::Ring;

pub use enumerate::{count_cacti, enumerate_cacti, for_each_cactus, CACTUS_LIMIT};
pub use theorem::{
    circular_shift_identity_check, circular_shift_sides, hyperpfaffian_side, pfaffian_tree_side,
    theorem2_lhs, theorem2_lhs_all_roots, theorem2_rhs, theorem2_terms,
};

/// The clause of the cactus definition that a block system violates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CactusDefect {
    /// Block of even size or of size below 3.
    BlockSize(Vec<usize>),
    OutOfRange(usize),
    /// A label appears twice inside one block or sequence.
    RepeatedLabel(usize),
    /// Two blocks (or two sequences) share the same underlying set.
    DuplicateBlock(Vec<usize>),
    /// This block closes a cycle in the incidence graph.
    Cycle(Vec<usize>),
    /// This vertex is not connected to vertex 1.
    Disconnected(usize),
}

impl fmt::Display for CactusDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CactusDefect::BlockSize(b) => write!(f, "block {b:?} is not of odd size >= 3"),
            CactusDefect::OutOfRange(v) => write!(f, "label {v} out of range"),
            CactusDefect::RepeatedLabel(v) => write!(f, "label {v} repeated inside a block"),
            CactusDefect::DuplicateBlock(b) => write!(f, "block {b:?} appears twice"),
            CactusDefect::Cycle(b) => write!(f, "block {b:?} closes a cycle"),
            CactusDefect::Disconnected(v) => write!(f, "vertex {v} is disconnected"),
        }
    }
}

/// Checks that `blocks` is an odd cactus on `[n]`.
pub fn is_cactus(n: usize, blocks: &[Vec<usize>]) -> std::result::Result<(), CactusDefect> {
    let mut seen_sets = std::collections::BTreeSet::new();
    // vertices are 1..=n, block b is node n + 1 + b
    let mut uf = UnionFind::new(n + 1 + blocks.len());
    for (b, block) in blocks.iter().enumerate() {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if let Some(&bad) = sorted.iter().find(|&&v| v == 0 || v > n) {
            return Err(CactusDefect::OutOfRange(bad));
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CactusDefect::RepeatedLabel(w[0]));
        }
        if sorted.len() < 3 || sorted.len() % 2 == 0 {
            return Err(CactusDefect::BlockSize(sorted));
        }
        if !seen_sets.insert(sorted.clone()) {
            return Err(CactusDefect::DuplicateBlock(sorted));
        }
        for &v in &sorted {
            if !uf.union(n + 1 + b, v) {
                return Err(CactusDefect::Cycle(sorted));
            }
        }
    }
    if let Some(v) = (2..=n).find(|&v| !uf.equiv(1, v)) {
        return Err(CactusDefect::Disconnected(v));
    }
    Ok(())
}

/// An odd cactus: blocks stored sorted, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cactus {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Cactus {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        is_cactus(n, &blocks).map_err(Error::NotACactus)?;
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        Cactus { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Each block as its increasing tuple, blocks in lexicographic order.
    pub fn canonical_refinement(&self) -> RefinedCactus {
        RefinedCactus {
            n: self.n,
            sequences: self.blocks.clone(),
        }
    }

    /// Number of refined cacti with a fixed cyclic order on each block,
    /// i.e. the starting-point choices `prod |B|`.
    pub fn starting_point_count(&self) -> u128 {
        self.blocks.iter().map(|b| b.len() as u128).product()
    }

    /// Number of all refined cacti over this cactus, `prod |B|!`.
    pub fn refinement_count(&self) -> u128 {
        self.blocks
            .iter()
            .map(|b| (1..=b.len() as u128).product::<u128>())
            .product()
    }

    /// Every refined cactus over this cactus (all orderings of all blocks).
    pub fn all_refinements(&self) -> Vec<RefinedCactus> {
        let per_block: Vec<Vec<Vec<usize>>> = self.blocks.iter().map(|b| permutations(b)).collect();
        cartesian(&per_block)
            .into_iter()
            .map(|sequences| RefinedCactus { n: self.n, sequences })
            .collect()
    }
}

/// A cactus whose blocks are ordered sequences. The listed order of the
/// sequences is kept; it only matters for [`RefinedCactus::concatenation`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RefinedCactus {
    n: usize,
    sequences: Vec<Vec<usize>>,
}

impl RefinedCactus {
    pub fn new(n: usize, sequences: Vec<Vec<usize>>) -> Result<Self> {
        is_cactus(n, &sequences).map_err(Error::NotACactus)?;
        Ok(RefinedCactus { n, sequences })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.sequences
    }

    /// The underlying cactus `A(C)`.
    pub fn underlying(&self) -> Cactus {
        Cactus::canonical(self.n, self.sequences.clone())
    }

    /// Every refined cactus obtained by changing the starting point of each
    /// sequence while keeping its cyclic order.
    pub fn rotations(&self) -> Vec<RefinedCactus> {
        let per_block: Vec<Vec<Vec<usize>>> = self
            .sequences
            .iter()
            .map(|s| {
                (0..s.len())
                    .map(|r| s[r..].iter().chain(&s[..r]).copied().collect())
                    .collect()
            })
            .collect();
        cartesian(&per_block)
            .into_iter()
            .map(|sequences| RefinedCactus { n: self.n, sequences })
            .collect()
    }

    /// Sequence indices in the canonical order (lexicographic on the sorted
    /// underlying sets).
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.sequences.len()).collect();
        let sorted: Vec<Vec<usize>> = self
            .sequences
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.sort_unstable();
                t
            })
            .collect();
        order.sort_by(|&a, &b| sorted[a].cmp(&sorted[b]));
        order
    }

    /// Local root of every sequence for the global root `i`: the first vertex
    /// on the unique path from the block towards `i` in the incidence tree.
    pub fn local_roots(&self, i: usize) -> Result<Vec<usize>> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        let mut blocks_at = vec![Vec::new(); self.n + 1];
        for (b, s) in self.sequences.iter().enumerate() {
            for &v in s {
                blocks_at[v].push(b);
            }
        }
        let mut local = vec![usize::MAX; self.sequences.len()];
        let mut reached = vec![false; self.n + 1];
        reached[i] = true;
        let mut queue = VecDeque::from([i]);
        while let Some(v) = queue.pop_front() {
            for &b in &blocks_at[v] {
                if local[b] != usize::MAX {
                    continue;
                }
                local[b] = v;
                for &w in &self.sequences[b] {
                    if w == v {
                        continue;
                    }
                    assert!(!reached[w], "incidence graph of a cactus has a cycle");
                    reached[w] = true;
                    queue.push_back(w);
                }
            }
        }
        debug_assert!(local.iter().all(|&r| r != usize::MAX));
        Ok(local)
    }

    /// `i` followed by the circulations of the sequences taken in `order`.
    pub fn concatenation(&self, i: usize, order: &[usize]) -> Result<Vec<usize>> {
        let shifted: Vec<usize> = order.iter().map(|&o| o + 1).collect();
        if !is_permutation_of_range(&shifted, self.sequences.len()) {
            return Err(Error::InvalidSequence(order.to_vec()));
        }
        let local = self.local_roots(i)?;
        let mut pi = Vec::with_capacity(self.n);
        pi.push(i);
        for &b in order {
            let seq = &self.sequences[b];
            let s = seq.iter().position(|&v| v == local[b]).expect("local root lies in its block");
            pi.extend(circulation(seq, s + 1)?);
        }
        debug_assert!(is_permutation_of_range(&pi, self.n));
        Ok(pi)
    }

    /// `(pi, sign(pi))` for root `i` and sequence order `order`.
    pub fn signature(&self, i: usize, order: &[usize]) -> Result<(Vec<usize>, i8)> {
        let pi = self.concatenation(i, order)?;
        let sign = sequence_sign(&pi).ok_or_else(|| Error::InvalidSequence(pi.clone()))?;
        Ok((pi, sign))
    }
}

/// `(a_{s+1}, ..., a_k, a_1, ..., a_{s-1})` for a 1-based position `s`.
pub fn circulation(alpha: &[usize], s: usize) -> Result<Vec<usize>> {
    if s == 0 || s > alpha.len() {
        return Err(Error::PositionOutOfRange {
            position: s,
            len: alpha.len(),
        });
    }
    Ok(alpha[s..].iter().chain(&alpha[..s - 1]).copied().collect())
}

/// The signed amplitude of a refined cactus for a given root and ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct CactusAmplitude<R> {
    pub value: R,
    pub root: usize,
    pub permutation: Vec<usize>,
    pub signature: i8,
}

/// Amplitude using the canonical sequence order.
pub fn amplitude<R: Ring>(c: &RefinedCactus, i: usize, family: &TensorFamily<R>) -> Result<CactusAmplitude<R>> {
    amplitude_with_order(c, i, &c.canonical_order(), family)
}

/// `sign(pi) prod_{a in C} y_a` with `pi` built from `order`.
pub fn amplitude_with_order<R: Ring>(
    c: &RefinedCactus,
    i: usize,
    order: &[usize],
    family: &TensorFamily<R>,
) -> Result<CactusAmplitude<R>> {
    if family.n() != c.n() {
        return Err(Error::MixedGroundSets(c.n(), family.n()));
    }
    let (permutation, signature) = c.signature(i, order)?;
    let mut value = R::one();
    for seq in c.sequences() {
        let t = family.get(seq.len()).ok_or(Error::MissingArity(seq.len()))?;
        value = value * &t.get(seq);
    }
    Ok(CactusAmplitude {
        value: value.signed(signature),
        root: i,
        permutation,
        signature,
    })
}

/// `Y_A` from the canonical refinement, canonical order and root 1.
pub fn cactus_amplitude<R: Ring>(a: &Cactus, family: &TensorFamily<R>) -> Result<R> {
    if a.n() == 0 {
        return Ok(R::one());
    }
    Ok(amplitude(&a.canonical_refinement(), 1, family)?.value)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn cartesian(choices: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// A worked example on 19 vertices with six blocks.
pub mod example {
    pub const N: usize = 19;

    pub fn blocks() -> Vec<Vec<usize>> {
        vec![
            vec![1, 2, 3],
            vec![2, 4, 5, 6, 7, 8, 9],
            vec![2, 10, 11, 12, 13],
            vec![11, 14, 15],
            vec![14, 16, 17],
            vec![15, 18, 19],
        ]
    }

    /// One refinement following the cyclic order of each lobe.
    pub fn sequences() -> Vec<Vec<usize>> {
        vec![
            vec![2, 3, 1],
            vec![6, 7, 8, 9, 2, 4, 5],
            vec![11, 12, 13, 2, 10],
            vec![11, 14, 15],
            vec![17, 14, 16],
            vec![15, 18, 19],
        ]
    }

    /// Root and sequence order that produce [`permutation`].
    pub const ROOT: usize = 10;
    pub const ORDER: [usize; 6] = [2, 0, 1, 5, 3, 4];

    pub fn permutation() -> Vec<usize> {
        vec![10, 11, 12, 13, 2, 3, 1, 4, 5, 6, 7, 8, 9, 18, 19, 14, 15, 16, 17]
    }
}

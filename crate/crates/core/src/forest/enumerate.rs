//! Exhaustive generation of admissible pairs.
//!
//! Undirected forests are grown edge by edge (each edge of `K_n` in or out)
//! with a union-find that refuses cycles and refuses merging two components
//! that would then hold two elements of `I` or two of `J`. At a leaf, type I
//! components are rooted at their `j`, every vertex of a type II component is
//! tried as its root, and the orientation is read off from the roots.

use petgraph::unionfind::UnionFind;

use super::{depths, AdmissiblePair, DirectedForest, Edge, ForestProblem};
use crate::linalg::IndexSet;

/// Largest `n` enumerated without an explicit override.
pub const FOREST_LIMIT: usize = 9;

#[derive(Clone)]
struct State {
    uf: UnionFind<usize>,
    rows: Vec<u8>,
    cols: Vec<u8>,
}

struct Search<'a, F> {
    problem: &'a ForestProblem,
    candidates: Vec<Edge>,
    chosen: Vec<Edge>,
    visit: F,
}

pub(super) fn run(problem: &ForestProblem, visit: impl FnMut(&AdmissiblePair)) {
    let n = problem.n();
    let candidates = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let state = State {
        uf: UnionFind::new(n + 1),
        rows: (0..=n).map(|v| u8::from(problem.rows().contains(v))).collect(),
        cols: (0..=n).map(|v| u8::from(problem.cols().contains(v))).collect(),
    };
    let mut search = Search {
        problem,
        candidates,
        chosen: Vec::new(),
        visit,
    };
    search.grow(0, state);
}

impl<F: FnMut(&AdmissiblePair)> Search<'_, F> {
    fn grow(&mut self, next: usize, state: State) {
        let Some(&(u, v)) = self.candidates.get(next) else {
            self.leaf(&state);
            return;
        };
        let (ru, rv) = (state.uf.find(u), state.uf.find(v));
        if ru != rv {
            let rows = state.rows[ru] + state.rows[rv];
            let cols = state.cols[ru] + state.cols[rv];
            if rows <= 1 && cols <= 1 {
                let mut merged = state.clone();
                merged.uf.union(ru, rv);
                let rep = merged.uf.find(ru);
                merged.rows[rep] = rows;
                merged.cols[rep] = cols;
                self.chosen.push((u, v));
                self.grow(next + 1, merged);
                self.chosen.pop();
            }
        }
        self.grow(next + 1, state);
    }

    fn leaf(&mut self, state: &State) {
        let n = self.problem.n();
        let mut fixed_roots = Vec::new();
        let mut free_blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![usize::MAX; n + 1];
        for v in 1..=n {
            let rep = state.uf.find(v);
            if rep != v {
                continue;
            }
            match (state.rows[rep], state.cols[rep]) {
                (1, 1) => {}
                (0, 0) => {
                    block_of[rep] = free_blocks.len();
                    free_blocks.push(Vec::new());
                }
                _ => return,
            }
        }
        for v in 1..=n {
            let rep = state.uf.find(v);
            if block_of[rep] != usize::MAX {
                free_blocks[block_of[rep]].push(v);
            } else if self.problem.cols().contains(v) {
                fixed_roots.push(v);
            }
        }
        let mut choice = vec![0usize; free_blocks.len()];
        loop {
            let mut roots = fixed_roots.clone();
            let picked: Vec<usize> = free_blocks.iter().zip(&choice).map(|(b, &c)| b[c]).collect();
            roots.extend_from_slice(&picked);
            self.emit(&roots, picked);
            // odometer over the root choices of the type II blocks
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return;
                }
                choice[k] += 1;
                if choice[k] < free_blocks[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn emit(&mut self, tree_roots: &[usize], mut picked: Vec<usize>) {
        let n = self.problem.n();
        let depth = depths(n, &self.chosen, tree_roots);
        let mut edges: Vec<Edge> = self
            .chosen
            .iter()
            .map(|&(u, v)| if depth[u] < depth[v] { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        picked.sort_unstable();
        let forest = DirectedForest::from_sorted(n, edges);
        let roots = IndexSet::new(picked).expect("one root per block");
        let pair = self.problem.pair(forest, roots);
        debug_assert_eq!(
            self.problem.check(pair.forest().edges(), pair.roots()).as_ref(),
            Ok(&pair)
        );
        (self.visit)(&pair);
    }
}

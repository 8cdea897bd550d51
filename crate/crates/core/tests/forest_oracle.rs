//! Admissible pair enumeration against a brute-force filter, and the forest
//! expansion of minors against independent determinant backends.

use std::collections::BTreeSet;

use hyperforest::forest::{check_admissible, enumerate_admissible, theorem1_rhs, AdmissiblePair, Edge, ForestProblem};
use hyperforest::linalg::{increasing_tuples, minor_det, signed_minor_berezin, IndexSet, SquareMatrix};
use hyperforest::perm::sequence_sign;
use hyperforest::random;
use hyperforest::ring::{parity_sign, Polynomial, Ring};
use hyperforest::Guard;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Key = (Vec<Edge>, Vec<usize>);

fn key(p: &AdmissiblePair) -> Key {
    (p.forest().edges().to_vec(), p.roots().as_slice().to_vec())
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// Every subset of the off-diagonal pairs of `[n] x [n]` times every root
/// subset, kept when `check_admissible` accepts it.
fn brute_force(n: usize, rows: &IndexSet, cols: &IndexSet) -> BTreeSet<Key> {
    let pairs: Vec<Edge> = (1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let root_sets = subsets(n);
    let mut out = BTreeSet::new();
    for m in 0u64..1 << pairs.len() {
        let edges: Vec<Edge> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| m >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        // cheap pre-filter: a forest has at most n - 1 edges
        if edges.len() >= n.max(1) {
            continue;
        }
        for roots in &root_sets {
            let r = IndexSet::new(roots.clone()).unwrap();
            if let Ok(p) = check_admissible(n, &edges, &r, rows, cols).unwrap() {
                out.insert(key(&p));
            }
        }
    }
    out
}

fn all_index_pairs(n: usize, p: usize) -> Vec<(IndexSet, IndexSet)> {
    let sets: Vec<IndexSet> = increasing_tuples(n, p)
        .into_iter()
        .map(|t| IndexSet::new(t).unwrap())
        .collect();
    sets.iter()
        .flat_map(|i| sets.iter().map(move |j| (i.clone(), j.clone())))
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=4 {
        for p in 0..=n.min(2) {
            for (i, j) in all_index_pairs(n, p) {
                let listed = enumerate_admissible(n, &i, &j, Guard::Checked).unwrap();
                let keys: Vec<Key> = listed.iter().map(key).collect();
                let unique: BTreeSet<Key> = keys.iter().cloned().collect();
                assert_eq!(unique.len(), keys.len(), "duplicates for n={n} I={i:?} J={j:?}");
                assert_eq!(unique, brute_force(n, &i, &j), "n={n} I={i:?} J={j:?}");
                let mut sorted = keys.clone();
                sorted.sort();
                assert_eq!(sorted, keys, "enumeration order");
            }
        }
    }
}

#[test]
fn two_vertex_listing() {
    let one = IndexSet::new(vec![1]).unwrap();
    let listed = enumerate_admissible(2, &one, &one, Guard::Checked).unwrap();
    assert_eq!(listed.iter().map(key).collect::<Vec<_>>(), vec![
        (vec![], vec![2]),
        (vec![(1, 2)], vec![]),
    ]);
}

#[test]
fn structural_counts() {
    for n in 1..=6 {
        let p = n.min(2);
        let i = IndexSet::new((1..=p).collect()).unwrap();
        let j = IndexSet::new((n - p + 1..=n).collect()).unwrap();
        for pair in enumerate_admissible(n, &i, &j, Guard::Checked).unwrap() {
            let blocks = pair.forest().components();
            assert_eq!(pair.forest().len(), n - blocks.len());
            assert_eq!(pair.roots().len() + p, blocks.len());
            // the signature only depends on sigma_F
            assert_eq!(pair.signature(), sequence_sign(pair.sigma()).unwrap());
            let rebuilt: Vec<usize> = j
                .iter()
                .map(|jj| {
                    let block = blocks.iter().find(|b| b.contains(&jj)).unwrap();
                    i.iter().position(|ii| block.contains(&ii)).unwrap() + 1
                })
                .collect();
            assert_eq!(rebuilt, pair.sigma());
        }
    }
}

#[test]
fn generic_minors_up_to_four() {
    for n in 1..=4 {
        let a = SquareMatrix::<Polynomial>::generic(n, "a");
        for p in 1..=n {
            for (i, j) in all_index_pairs(n, p) {
                assert_eq!(
                    theorem1_rhs(&a, &i, &j, Guard::Checked).unwrap(),
                    minor_det(&a, &i, &j).unwrap(),
                    "n={n} I={i:?} J={j:?}"
                );
            }
        }
    }
}

#[test]
fn generic_five_against_entangled_integral() {
    let a = SquareMatrix::<Polynomial>::generic(5, "a");
    for p in 1..=2 {
        for (i, j) in all_index_pairs(5, p).into_iter().step_by(7) {
            let rhs = theorem1_rhs(&a, &i, &j, Guard::Checked).unwrap();
            let sign = parity_sign(i.sum() + j.sum());
            assert_eq!(rhs.clone(), minor_det(&a, &i, &j).unwrap());
            assert_eq!(rhs.signed(sign), signed_minor_berezin(&a, &i, &j).unwrap());
        }
    }
}

#[test]
fn massless_terms_have_no_roots() {
    let w = SquareMatrix::<Polynomial>::generic_symmetric_weights(4, "w");
    let l = SquareMatrix::laplacian(&w).unwrap();
    let sums = l.column_sums();
    let problem = ForestProblem::new(4, IndexSet::new(vec![2]).unwrap(), IndexSet::new(vec![3]).unwrap()).unwrap();
    let mut rooted_free = Polynomial::from(0);
    problem
        .for_each(Guard::Checked, |pair| {
            let wgt = pair.weight(&l, &sums);
            if pair.roots().is_empty() {
                rooted_free += wgt;
            } else {
                assert!(wgt.is_zero());
            }
        })
        .unwrap();
    assert_eq!(
        rooted_free.signed(problem.global_sign()),
        minor_det(&l, problem.rows(), problem.cols()).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_rational_minors(seed in any::<u64>(), n in 2usize..=6, p in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::matrix(&mut rng, n, 6);
        let choices = all_index_pairs(n, p);
        let (i, j) = &choices[(seed as usize) % choices.len()];
        prop_assert_eq!(theorem1_rhs(&a, i, j, Guard::Checked).unwrap(), minor_det(&a, i, j).unwrap());
    }
}

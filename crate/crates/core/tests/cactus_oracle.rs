//! Cactus enumeration against a brute-force filter, amplitude invariance, and
//! both sides of the cactus expansion.

use std::collections::BTreeSet;

use hyperforest::cactus::{
    enumerate_cacti, hyperpfaffian_side, is_cactus, pfaffian_tree_side, theorem2_lhs, theorem2_rhs,
    theorem2_terms, Cactus,
};
use hyperforest::linalg::{increasing_tuples, AntisymmetricTensor, TensorFamily};
use hyperforest::perm::sequence_sign;
use hyperforest::random;
use hyperforest::ring::{Polynomial, Rational, Ring};
use hyperforest::Guard;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brute_force(n: usize, allowed: &[usize]) -> BTreeSet<Vec<Vec<usize>>> {
    let candidates: Vec<Vec<usize>> = allowed
        .iter()
        .flat_map(|&k| increasing_tuples(n, k))
        .collect();
    let mut out = BTreeSet::new();
    fn rec(
        n: usize,
        candidates: &[Vec<usize>],
        start: usize,
        budget: usize,
        chosen: &mut Vec<Vec<usize>>,
        out: &mut BTreeSet<Vec<Vec<usize>>>,
    ) {
        if budget == 0 {
            if is_cactus(n, chosen).is_ok() {
                let mut c = chosen.clone();
                c.sort();
                out.insert(c);
            }
            return;
        }
        for k in start..candidates.len() {
            let cost = candidates[k].len() - 1;
            if cost <= budget {
                chosen.push(candidates[k].clone());
                rec(n, candidates, k + 1, budget - cost, chosen, out);
                chosen.pop();
            }
        }
    }
    if n % 2 == 1 {
        rec(n, &candidates, 0, n - 1, &mut Vec::new(), &mut out);
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let cases: &[(usize, &[usize])] = &[
        (1, &[3]),
        (3, &[3]),
        (4, &[3]),
        (5, &[3]),
        (5, &[5]),
        (5, &[3, 5]),
        (6, &[3, 5]),
        (7, &[3]),
        (7, &[3, 5]),
        (7, &[3, 5, 7]),
        (9, &[5, 9]),
    ];
    for &(n, allowed) in cases {
        let listed: Vec<Vec<Vec<usize>>> = enumerate_cacti(n, allowed, Guard::Checked)
            .unwrap()
            .iter()
            .map(|c| c.blocks().to_vec())
            .collect();
        let unique: BTreeSet<_> = listed.iter().cloned().collect();
        assert_eq!(unique.len(), listed.len(), "duplicates n={n} k={allowed:?}");
        assert_eq!(unique, brute_force(n, allowed), "n={n} k={allowed:?}");
    }
    assert_eq!(brute_force(5, &[3]).len(), 15);
    assert_eq!(brute_force(5, &[3, 5]).len(), 16);
}

/// `sign(pi) * prod sign(alpha)`: the sign in front of the sorted-index
/// monomial `prod y_{sorted(alpha)}`.
fn monomial_sign(c: &hyperforest::cactus::RefinedCactus, root: usize, order: &[usize]) -> i8 {
    let (_, sign) = c.signature(root, order).unwrap();
    c.sequences()
        .iter()
        .map(|s| sequence_sign(s).unwrap())
        .fold(sign, |a, b| a * b)
}

#[test]
fn amplitude_is_choice_free_up_to_seven() {
    for c in enumerate_cacti(7, &[3, 5, 7], Guard::Checked).unwrap() {
        let canonical = c.canonical_refinement();
        let expected = monomial_sign(&canonical, 1, &canonical.canonical_order());
        let refinements = c.all_refinements();
        assert_eq!(refinements.len() as u128, c.refinement_count());
        for r in refinements {
            for root in 1..=7 {
                let order: Vec<usize> = (0..r.sequences().len()).rev().collect();
                assert_eq!(monomial_sign(&r, root, &order), expected, "{c:?}");
            }
        }
    }
}

fn check_theorem(n: usize, arities: &[usize]) {
    let fam = TensorFamily::generic(n, arities, "y").unwrap();
    let rhs = theorem2_rhs(&fam, Guard::Checked).unwrap();
    for i in 1..=n {
        assert_eq!(theorem2_lhs(&fam, i).unwrap(), rhs, "n={n} k={arities:?} i={i}");
    }
}

#[test]
fn generic_small_cases() {
    check_theorem(3, &[3]);
    check_theorem(5, &[3]);
    check_theorem(5, &[3, 5]);
    check_theorem(5, &[5]);
}

#[test]
fn five_vertex_expansion_has_fifteen_monomials() {
    let fam = TensorFamily::generic(5, &[3], "y").unwrap();
    let terms = theorem2_terms(&fam, Guard::Checked).unwrap();
    assert_eq!(terms.len(), 15);
    let mut total = Polynomial::zero();
    for (_, v) in &terms {
        assert_eq!(v.num_terms(), 1);
        total += v;
    }
    assert_eq!(total.num_terms(), 15);
    assert_eq!(theorem2_lhs(&fam, 4).unwrap(), total);
}

#[test]
fn even_sizes_vanish() {
    for n in [2, 4, 6] {
        let arities: Vec<usize> = [3, 5].into_iter().filter(|&k| k <= n).collect();
        let fam = TensorFamily::generic(n, &arities, "y").unwrap();
        assert!(enumerate_cacti(n, &[3, 5], Guard::Checked).unwrap().is_empty());
        for i in 1..=n {
            assert!(theorem2_lhs(&fam, i).unwrap().is_zero());
        }
    }
}

#[test]
fn rational_nine_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fam = random::family(&mut rng, 9, &[3, 5], 4).unwrap();
    let rhs = theorem2_rhs(&fam, Guard::Checked).unwrap();
    for i in 1..=9 {
        assert_eq!(theorem2_lhs(&fam, i).unwrap(), rhs);
    }
}

#[test]
fn hyperpfaffian_consistency() {
    for n in [3, 5, 7] {
        let fam = TensorFamily::generic(n, &[3], "y").unwrap();
        let y = fam.get(3).unwrap();
        for i in 1..=n {
            let lhs = theorem2_lhs(&fam, i).unwrap();
            assert_eq!(hyperpfaffian_side(y, i).unwrap(), lhs);
            assert_eq!(pfaffian_tree_side(y, i).unwrap(), lhs);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [5, 9] {
        let y = random::tensor(&mut rng, n, 5, 3).unwrap();
        let fam = TensorFamily::from_tensors(n, [y.clone()]).unwrap();
        for i in 1..=n {
            assert_eq!(hyperpfaffian_side(&y, i).unwrap(), theorem2_lhs(&fam, i).unwrap());
        }
    }
}

#[test]
fn hyperpfaffian_side_vanishes_off_multiples() {
    // n - 1 = 6 is not a multiple of k - 1 = 4
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let y = random::tensor(&mut rng, 7, 5, 3).unwrap();
    let fam = TensorFamily::from_tensors(7, [y.clone()]).unwrap();
    for i in 1..=7 {
        assert!(hyperpfaffian_side(&y, i).unwrap().is_zero());
        assert!(theorem2_lhs(&fam, i).unwrap().is_zero());
    }
    assert!(theorem2_rhs(&fam, Guard::Checked).unwrap().is_zero());
}

#[test]
fn example_amplitude_is_a_single_signed_monomial() {
    let a = Cactus::new(hyperforest::cactus::example::N, hyperforest::cactus::example::blocks()).unwrap();
    let mut fam = TensorFamily::<Rational>::new(a.n());
    for k in [3, 5, 7] {
        let mut t = AntisymmetricTensor::zero(a.n(), k).unwrap();
        for b in a.blocks().iter().filter(|b| b.len() == k) {
            t.set(b, Rational::from(1)).unwrap();
        }
        fam.insert(t).unwrap();
    }
    let v = hyperforest::cactus::cactus_amplitude(&a, &fam).unwrap();
    assert!(v == Rational::from(1) || v == Rational::from(-1));
}

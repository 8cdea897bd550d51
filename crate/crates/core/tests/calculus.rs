//! Randomized laws of the Grassmann-Berezin calculus and the linear algebra
//! built on it.

use hyperforest::grassmann::{mask_of, GrassmannElement, Parity};
use hyperforest::linalg::{
    det, det_berezin, det_leibniz, hyperpfaffian, hyperpfaffian_with, inverse,
    inverse_entry_berezin, minor_det, pfaffian, pfaffian_with, signed_minor, signed_minor_berezin,
    increasing_tuples, AntisymmetricTensor, IndexSet, PfaffianBackend, SquareMatrix,
};
use hyperforest::perm::sequence_sign;
use hyperforest::random;
use hyperforest::ring::{Polynomial, Rational, Ring};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type G = GrassmannElement<Rational>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn odd(n: usize, seed: u64) -> G {
    random::grassmann(&mut rng(seed), n, 0.4, |d| d % 2 == 1).unwrap()
}

fn even_nilpotent(n: usize, seed: u64) -> G {
    random::grassmann(&mut rng(seed), n, 0.3, |d| d > 0 && d % 2 == 0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pauli_exclusion(seed in any::<u64>(), n in 1usize..=7) {
        let f = odd(n, seed);
        prop_assert!(f.is_zero() || f.parity() == Parity::Odd);
        prop_assert!((&f * &f).is_zero());
    }

    #[test]
    fn exp_is_additive_on_even_elements(seed in any::<u64>(), n in 2usize..=6) {
        let f = even_nilpotent(n, seed);
        let g = even_nilpotent(n, seed.wrapping_add(1));
        prop_assert_eq!((&f + &g).exp().unwrap(), &f.exp().unwrap() * &g.exp().unwrap());
    }

    #[test]
    fn berezin_reordering_sign(seed in any::<u64>(), n in 1usize..=7) {
        let mut r = rng(seed);
        let f = random::grassmann(&mut r, n, 0.5, |_| true).unwrap();
        let mut sigma: Vec<usize> = (1..=n).collect();
        sigma.shuffle(&mut r);
        let increasing: Vec<usize> = (1..=n).collect();
        let base = f.berezin_integrate(&increasing).unwrap().scalar_part();
        let permuted = f.berezin_integrate(&sigma).unwrap().scalar_part();
        prop_assert_eq!(permuted, base.signed(sequence_sign(&sigma).unwrap()));
    }

    #[test]
    fn fubini(seed in any::<u64>(), n in 2usize..=8, split in any::<u32>()) {
        let mut r = rng(seed);
        let inside: Vec<usize> = (1..=n).filter(|i| split >> i & 1 == 1).collect();
        let outside: Vec<usize> = (1..=n).filter(|i| split >> i & 1 == 0).collect();
        let (mi, mo) = (mask_of(&inside), mask_of(&outside));
        let f = random::grassmann(&mut r, n, 0.6, |_| true).unwrap();
        let g = random::grassmann(&mut r, n, 0.6, |_| true).unwrap();
        // restrict supports
        let f = G::from_terms(n, f.terms().filter(|(m, _)| m & !mi == 0).map(|(m, c)| (m, c.clone()))).unwrap();
        let g = G::from_terms(n, g.terms().filter(|(m, _)| m & !mo == 0).map(|(m, c)| (m, c.clone()))).unwrap();
        let order: Vec<usize> = inside.iter().chain(&outside).copied().collect();
        let joint = (&f * &g).berezin_integrate(&order).unwrap().scalar_part();
        let fi = f.berezin_integrate(&inside).unwrap().scalar_part();
        let go = g.berezin_integrate(&outside).unwrap().scalar_part();
        let p = inside.len();
        let sign = if (p * (n - p)).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(joint, (fi * &go).signed(sign));
    }

    #[test]
    fn pfaffian_backends_and_square(seed in any::<u64>(), half in 1usize..=4) {
        let a = random::skew_matrix(&mut rng(seed), 2 * half, 6);
        let pf = pfaffian(&a).unwrap();
        prop_assert_eq!(pfaffian_with(&a, PfaffianBackend::Berezin).unwrap(), pf.clone());
        prop_assert_eq!(pf.clone() * &pf, det(&a));
    }

    #[test]
    fn determinant_backends(seed in any::<u64>(), n in 1usize..=6) {
        let a = random::matrix(&mut rng(seed), n, 7);
        let d = det(&a);
        prop_assert_eq!(det_leibniz(&a), d.clone());
        prop_assert_eq!(det_berezin(&a).unwrap(), d.clone());
        prop_assert_eq!(det(&a.transpose()), d);
    }

    #[test]
    fn minors_via_entangled_integral(seed in any::<u64>(), n in 1usize..=5, p in 0usize..=2, pick in any::<u64>()) {
        let p = p.min(n);
        let a = random::matrix(&mut rng(seed), n, 5);
        let mut r = rng(pick);
        let mut labels: Vec<usize> = (1..=n).collect();
        labels.shuffle(&mut r);
        let rows = IndexSet::new(labels[..p].to_vec()).unwrap();
        labels.shuffle(&mut r);
        let cols = IndexSet::new(labels[..p].to_vec()).unwrap();
        prop_assert_eq!(signed_minor_berezin(&a, &rows, &cols).unwrap(), signed_minor(&a, &rows, &cols).unwrap());
    }

    #[test]
    fn cramer_ratio(seed in any::<u64>(), i in 1usize..=4, j in 1usize..=4) {
        let a = random::matrix(&mut rng(seed), 4, 9);
        match inverse(&a) {
            None => prop_assert!(det(&a).is_zero()),
            Some(inv) => prop_assert_eq!(
                inverse_entry_berezin(&a, i, j).unwrap(),
                Some(inv[(i - 1, j - 1)].clone())
            ),
        }
    }

    #[test]
    fn cofactor_expansion(seed in any::<u64>(), n in 1usize..=5, row in 1usize..=5) {
        let row = row.min(n);
        let a = random::matrix(&mut rng(seed), n, 5);
        let r = IndexSet::new(vec![row]).unwrap();
        let mut total = Rational::zero();
        for col in 1..=n {
            let c = IndexSet::new(vec![col]).unwrap();
            total += a[(row - 1, col - 1)].clone() * signed_minor(&a, &r, &c).unwrap();
        }
        prop_assert_eq!(total, det(&a));
    }

    #[test]
    fn hyperpfaffian_backends(seed in any::<u64>(), m in prop::sample::select(vec![4usize, 8])) {
        let t = random::tensor(&mut rng(seed), m, 4, 4).unwrap();
        prop_assert_eq!(
            hyperpfaffian_with(&t, PfaffianBackend::Berezin).unwrap(),
            hyperpfaffian(&t).unwrap()
        );
    }

    #[test]
    fn generic_minor_subsets(cols in subsequence(vec![1usize, 2, 3, 4], 0..=2), rows in subsequence(vec![1usize, 2, 3, 4], 0..=2)) {
        prop_assume!(rows.len() == cols.len());
        let a = SquareMatrix::<Polynomial>::generic(4, "m");
        let (r, c) = (IndexSet::new(rows).unwrap(), IndexSet::new(cols).unwrap());
        prop_assert_eq!(
            signed_minor_berezin(&a, &r, &c).unwrap(),
            minor_det(&a, &r, &c).unwrap().signed(if (r.sum() + c.sum()) % 2 == 0 { 1 } else { -1 })
        );
    }
}

#[test]
fn symbolic_pfaffian_backends() {
    let a = SquareMatrix::<Polynomial>::generic_skew(6, "s");
    assert_eq!(pfaffian_with(&a, PfaffianBackend::Berezin).unwrap(), pfaffian(&a).unwrap());
}

#[test]
fn hyperpfaffian_of_order_two_matches_pfaffian() {
    for seed in 0..20 {
        let a = random::skew_matrix(&mut rng(seed), 6, 5);
        let mut t = AntisymmetricTensor::zero(6, 2).unwrap();
        for key in increasing_tuples(6, 2) {
            t.set(&key, a[(key[0] - 1, key[1] - 1)].clone()).unwrap();
        }
        assert_eq!(hyperpfaffian(&t).unwrap(), pfaffian(&a).unwrap());
    }
}

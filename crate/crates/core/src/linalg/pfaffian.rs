//! Pfaffians and hyperpfaffians.
//!
//! The order-`d` hyperpfaffian of an antisymmetric `d`-tensor `A` on labels
//! `1..=m` is
//!
//! ```text
//! Pf^[d](A) = sum over partitions {S_1, ..., S_q} of [m] into d-blocks of
//!             sign(S_1 S_2 ... S_q) * A_{S_1} * ... * A_{S_q}
//! ```
//!
//! with each block written increasingly and `sign` the signature of the
//! concatenated word as a permutation of `1..=m`. It is the normalization for
//! which `int dx_m ... dx_1 exp((1/d!) sum A_{a_1..a_d} x_{a_1}...x_{a_d})`
//! equals `Pf^[d](A)`, and for `d = 2` it is the ordinary Pfaffian. It
//! vanishes unless `d` divides `m`.

use crate::error::{Error, Result};
use crate::grassmann::{product_sign, GrassmannElement};
use crate::linalg::{AntisymmetricTensor, SquareMatrix};
use crate::perm::sequence_sign;
use crate::ring::{Rational, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PfaffianBackend {
    /// Signed sum over perfect matchings / block partitions.
    Combinatorial,
    /// Top coefficient of a Gaussian-type Grassmann exponential.
    Berezin,
}

pub fn pfaffian<R: Ring>(a: &SquareMatrix<R>) -> Result<R> {
    pfaffian_with(a, PfaffianBackend::Combinatorial)
}

pub fn pfaffian_with<R: Ring>(a: &SquareMatrix<R>, backend: PfaffianBackend) -> Result<R> {
    let n = a.n();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    a.check_skew_symmetric()?;
    if n == 0 {
        return Ok(R::one());
    }
    match backend {
        PfaffianBackend::Combinatorial => {
            let mut rest: Vec<usize> = (0..n).collect();
            Ok(pfaffian_expand(a, &mut rest))
        }
        PfaffianBackend::Berezin => pfaffian_berezin(a),
    }
}

/// Expansion along the first remaining index:
/// `Pf = sum_k (-1)^(k-1) a_{r_0 r_k} Pf(rest without r_0, r_k)`.
fn pfaffian_expand<R: Ring>(a: &SquareMatrix<R>, rest: &mut Vec<usize>) -> R {
    if rest.is_empty() {
        return R::one();
    }
    let first = rest.remove(0);
    let mut total = R::zero();
    for k in 0..rest.len() {
        let partner = rest[k];
        let entry = &a[(first, partner)];
        if entry.is_zero() {
            continue;
        }
        rest.remove(k);
        let sub = pfaffian_expand(a, rest);
        rest.insert(k, partner);
        if sub.is_zero() {
            continue;
        }
        total += (entry.clone() * &sub).signed(if k % 2 == 0 { 1 } else { -1 });
    }
    rest.insert(0, first);
    total
}

/// `int dx_1 ... dx_n exp(-1/2 x A x)` with `x A x = sum_{i,j} x_i A_ij x_j`.
fn pfaffian_berezin<R: Ring>(a: &SquareMatrix<R>) -> Result<R> {
    let n = a.n();
    let half = R::from_rational(Rational::new(-1, 2));
    let mut action = GrassmannElement::zero(n)?;
    for i in 1..=n {
        for j in 1..=n {
            let c = &a[(i - 1, j - 1)];
            if c.is_zero() || i == j {
                continue;
            }
            action = action.checked_add(&GrassmannElement::monomial(n, &[i, j], c.mul_ref(&half))?)?;
        }
    }
    let order: Vec<usize> = (1..=n).collect();
    Ok(action.exp()?.berezin_integrate(&order)?.scalar_part())
}

/// Order-`d` hyperpfaffian of an antisymmetric tensor of even arity `d`.
pub fn hyperpfaffian<R: Ring>(t: &AntisymmetricTensor<R>) -> Result<R> {
    hyperpfaffian_with(t, PfaffianBackend::Combinatorial)
}

pub fn hyperpfaffian_with<R: Ring>(t: &AntisymmetricTensor<R>, backend: PfaffianBackend) -> Result<R> {
    let d = t.arity();
    if d % 2 == 1 {
        return Err(Error::InvalidArity {
            arity: d,
            reason: "hyperpfaffian needs an even arity",
        });
    }
    let m = t.n();
    if !m.is_multiple_of(d) {
        return Ok(R::zero());
    }
    if m == 0 {
        return Ok(R::one());
    }
    match backend {
        PfaffianBackend::Combinatorial => Ok(hyperpfaffian_partitions(t)),
        PfaffianBackend::Berezin => hyperpfaffian_berezin(t),
    }
}

fn hyperpfaffian_partitions<R: Ring>(t: &AntisymmetricTensor<R>) -> R {
    fn rec<R: Ring>(
        t: &AntisymmetricTensor<R>,
        remaining: &[usize],
        word: &mut Vec<usize>,
        weight: R,
        total: &mut R,
    ) {
        let d = t.arity();
        let Some((&first, others)) = remaining.split_first() else {
            let sign = sequence_sign(word).expect("partition word is a permutation");
            *total += weight.signed(sign);
            return;
        };
        let mut choice = Vec::with_capacity(d - 1);
        choose(others, d - 1, 0, &mut choice, &mut |picked: &[usize]| {
            let mut block = Vec::with_capacity(d);
            block.push(first);
            block.extend_from_slice(picked);
            let entry = t.get(&block);
            if entry.is_zero() {
                return;
            }
            let rest: Vec<usize> = others.iter().copied().filter(|v| !picked.contains(v)).collect();
            let len = word.len();
            word.extend_from_slice(&block);
            rec(t, &rest, word, weight.mul_ref(&entry), total);
            word.truncate(len);
        });
    }

    let labels: Vec<usize> = (1..=t.n()).collect();
    let mut total = R::zero();
    rec(t, &labels, &mut Vec::with_capacity(t.n()), R::one(), &mut total);
    total
}

/// Calls `visit` with every increasing `k`-subset of `pool` (which is itself
/// increasing).
fn choose(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < k - cur.len() {
            break;
        }
        cur.push(pool[i]);
        choose(pool, k, i + 1, cur, visit);
        cur.pop();
    }
}

/// `int dx_m ... dx_1 exp((1/d!) sum_{a in [m]^d} A_a x_{a_1} ... x_{a_d})`,
/// summing literally over all ordered tuples of distinct labels.
fn hyperpfaffian_berezin<R: Ring>(t: &AntisymmetricTensor<R>) -> Result<R> {
    let (m, d) = (t.n(), t.arity());
    let form = ordered_tuple_form(m, d, |tuple| t.get(tuple))?
        .scale(&R::from_rational(Rational::inverse_factorial(d)));
    Ok(form.exp()?.top_coefficient())
}

/// `sum over ordered tuples (a_1..a_len) of distinct labels in [n] of
/// coeff(a) x_{a_1} ... x_{a_len}`.
pub(crate) fn ordered_tuple_form<R: Ring>(
    n: usize,
    len: usize,
    mut coeff: impl FnMut(&[usize]) -> R,
) -> Result<GrassmannElement<R>> {
    fn rec<R: Ring>(
        n: usize,
        len: usize,
        tuple: &mut Vec<usize>,
        mask: u32,
        sign: i8,
        coeff: &mut dyn FnMut(&[usize]) -> R,
        acc: &mut Vec<(u32, R)>,
    ) {
        if tuple.len() == len {
            let c = coeff(tuple);
            if !c.is_zero() {
                acc.push((mask, c.signed(sign)));
            }
            return;
        }
        for v in 1..=n {
            let bit = 1u32 << (v - 1);
            if mask & bit != 0 {
                continue;
            }
            tuple.push(v);
            rec(n, len, tuple, mask | bit, sign * product_sign(mask, bit), coeff, acc);
            tuple.pop();
        }
    }
    let mut acc = Vec::new();
    rec(n, len, &mut Vec::with_capacity(len), 0, 1, &mut coeff, &mut acc);
    debug_assert!(acc.iter().all(|(m, _)| m.count_ones() as usize == len));
    GrassmannElement::from_terms(n, acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det::det;
    use crate::ring::Polynomial;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn skew_sample(n: usize, seed: i64) -> SquareMatrix<Rational> {
        SquareMatrix::from_fn(n, |r, c| {
            let (a, b) = (r.min(c) as i64, r.max(c) as i64);
            let v = Rational::new((seed + 5 * a + 3 * b * b + a * b) % 13 - 6, 1 + (a + b) % 4);
            match r.cmp(&c) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Greater => -v,
                std::cmp::Ordering::Equal => q(0),
            }
        })
    }

    #[test]
    fn two_by_two() {
        let a = SquareMatrix::<Polynomial>::generic_skew(2, "pf2");
        for b in [PfaffianBackend::Combinatorial, PfaffianBackend::Berezin] {
            assert_eq!(pfaffian_with(&a, b).unwrap(), Polynomial::var("pf2_1_2"));
        }
        let unit = SquareMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(-1), q(0)]]).unwrap();
        assert_eq!(pfaffian(&unit).unwrap(), q(1));
    }

    #[test]
    fn generic_four_by_four() {
        let a = SquareMatrix::<Polynomial>::generic_skew(4, "pf4");
        let expected: Polynomial = "pf4_1_2 * pf4_3_4 - pf4_1_3 * pf4_2_4 + pf4_1_4 * pf4_2_3"
            .parse()
            .unwrap();
        assert_eq!(pfaffian(&a).unwrap(), expected);
        assert_eq!(pfaffian_with(&a, PfaffianBackend::Berezin).unwrap(), expected);
    }

    #[test]
    fn square_is_determinant() {
        for n in [2, 4, 6, 8] {
            for seed in 0..3 {
                let a = skew_sample(n, seed);
                let pf = pfaffian(&a).unwrap();
                assert_eq!(pf.clone() * &pf, det(&a));
                assert_eq!(pfaffian_with(&a, PfaffianBackend::Berezin).unwrap(), pf);
            }
        }
    }

    #[test]
    fn validation() {
        let odd = SquareMatrix::<Rational>::zero(3);
        assert_eq!(pfaffian(&odd), Err(Error::OddDimension(3)));
        let sym = SquareMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert!(matches!(pfaffian(&sym), Err(Error::NotSkewSymmetric { .. })));
        assert_eq!(pfaffian(&SquareMatrix::<Rational>::zero(0)).unwrap(), q(1));
    }

    fn matrix_as_tensor(a: &SquareMatrix<Polynomial>) -> AntisymmetricTensor<Polynomial> {
        let mut t = AntisymmetricTensor::zero(a.n(), 2).unwrap();
        for i in 1..=a.n() {
            for j in i + 1..=a.n() {
                t.set(&[i, j], a[(i - 1, j - 1)].clone()).unwrap();
            }
        }
        t
    }

    #[test]
    fn order_two_is_pfaffian() {
        let a = SquareMatrix::<Polynomial>::generic_skew(6, "hp2");
        let t = matrix_as_tensor(&a);
        let pf = pfaffian(&a).unwrap();
        assert_eq!(hyperpfaffian(&t).unwrap(), pf);
        assert_eq!(hyperpfaffian_with(&t, PfaffianBackend::Berezin).unwrap(), pf);
    }

    #[test]
    fn single_block() {
        let t = AntisymmetricTensor::generic(4, 4, "hb").unwrap();
        let expected = Polynomial::var("hb_1_2_3_4");
        assert_eq!(hyperpfaffian(&t).unwrap(), expected);
        assert_eq!(hyperpfaffian_with(&t, PfaffianBackend::Berezin).unwrap(), expected);
    }

    #[test]
    fn indivisible_size_is_zero() {
        let t = AntisymmetricTensor::generic(6, 4, "hz").unwrap();
        assert!(hyperpfaffian(&t).unwrap().is_zero());
        assert!(hyperpfaffian_with(&t, PfaffianBackend::Berezin).unwrap().is_zero());
    }

    #[test]
    fn odd_arity_rejected() {
        let t = AntisymmetricTensor::<Rational>::zero(6, 3).unwrap();
        assert!(matches!(hyperpfaffian(&t), Err(Error::InvalidArity { .. })));
    }

    #[test]
    fn order_four_backends_agree() {
        let t = AntisymmetricTensor::generic(8, 4, "h8").unwrap();
        let comb = hyperpfaffian(&t).unwrap();
        assert_eq!(comb.num_terms(), 35);
        assert_eq!(hyperpfaffian_with(&t, PfaffianBackend::Berezin).unwrap(), comb);
    }

    #[test]
    fn degenerate_tensor_cancels() {
        // every block of {1..8} into 4-sets meets {1, 2}, and the entries are
        // supported only on sets containing both 1 and 2: at most one block
        // can be nonzero, so all partitions vanish.
        let mut t = AntisymmetricTensor::zero(8, 4).unwrap();
        for rest in crate::linalg::increasing_tuples(6, 2) {
            t.set(&[1, 2, rest[0] + 2, rest[1] + 2], q(1)).unwrap();
        }
        assert!(hyperpfaffian(&t).unwrap().is_zero());
        assert!(hyperpfaffian_with(&t, PfaffianBackend::Berezin).unwrap().is_zero());
    }
}

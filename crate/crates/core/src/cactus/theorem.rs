//! Both sides of the cactus expansion, and its Pfaffian specializations.

use super::{cactus_amplitude, for_each_cactus, Cactus};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::linalg::{hyperpfaffian, ordered_tuple_form, pfaffian, AntisymmetricTensor, SquareMatrix, TensorFamily};
use crate::ring::{parity_sign, Rational, Ring};
use crate::Guard;

/// `Omega_i = int dx_n ... dx_1 x_i exp(sum_k 1/(k-1)! sum_{a in [n]^k}
/// y_a x_{a_2} ... x_{a_k})`, evaluated literally in the Grassmann algebra.
pub fn theorem2_lhs<R: Ring>(family: &TensorFamily<R>, i: usize) -> Result<R> {
    let n = family.n();
    let mut exponent = GrassmannElement::zero(n)?;
    for t in family.tensors() {
        let k = t.arity();
        if k > n {
            continue;
        }
        let form = ordered_tuple_form(n, k - 1, |tail| {
            let mut full = Vec::with_capacity(k);
            full.push(0);
            full.extend_from_slice(tail);
            let mut sum = R::zero();
            for head in 1..=n {
                full[0] = head;
                sum += t.get(&full);
            }
            sum
        })?;
        let factor = R::from_rational(Rational::inverse_factorial(k - 1));
        exponent = exponent.checked_add(&form.scale(&factor))?;
    }
    let integrand = GrassmannElement::generator(n, i)?.checked_mul(&exponent.exp()?)?;
    let order: Vec<usize> = (1..=n).rev().collect();
    Ok(integrand.berezin_integrate(&order)?.scalar_part())
}

/// `Omega_i` for every root `i = 1..=n`.
pub fn theorem2_lhs_all_roots<R: Ring>(family: &TensorFamily<R>) -> Result<Vec<R>> {
    (1..=family.n()).map(|i| theorem2_lhs(family, i)).collect()
}

/// Every cactus with block sizes among the family's arities, paired with
/// its amplitude `Y_A`.
pub fn theorem2_terms<R: Ring>(family: &TensorFamily<R>, guard: Guard) -> Result<Vec<(Cactus, R)>> {
    let mut out = Vec::new();
    let mut failure = None;
    for_each_cactus(family.n(), &family.arities(), guard, |c| {
        if failure.is_some() {
            return;
        }
        match cactus_amplitude(c, family) {
            Ok(v) => out.push((c.clone(), v)),
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `sum_A Y_A` over all odd cacti built from the family's arities.
pub fn theorem2_rhs<R: Ring>(family: &TensorFamily<R>, guard: Guard) -> Result<R> {
    let mut total = R::zero();
    let mut failure = None;
    for_each_cactus(family.n(), &family.arities(), guard, |c| {
        if failure.is_some() {
            return;
        }
        match cactus_amplitude(c, family) {
            Ok(v) => total += v,
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `A^{(i)}`: contraction over the first index, then label `i` removed.
fn reduced<R: Ring>(y: &AntisymmetricTensor<R>, i: usize) -> Result<AntisymmetricTensor<R>> {
    if i == 0 || i > y.n() {
        return Err(Error::IndexOutOfRange { index: i, n: y.n() });
    }
    y.contract_first()?.delete_index(i)
}

/// `(-1)^(i-1) Pf^[k-1](A^{(i)})` for a single tensor of odd arity `k`.
pub fn hyperpfaffian_side<R: Ring>(y: &AntisymmetricTensor<R>, i: usize) -> Result<R> {
    Ok(hyperpfaffian(&reduced(y, i)?)?.signed(parity_sign(i - 1)))
}

/// `(-1)^(i-1) Pf(A^{(i)})` for an arity-3 tensor, through the ordinary
/// Pfaffian of the reduced skew matrix.
pub fn pfaffian_tree_side<R: Ring>(y: &AntisymmetricTensor<R>, i: usize) -> Result<R> {
    if y.arity() != 3 {
        return Err(Error::InvalidArity {
            arity: y.arity(),
            reason: "the Pfaffian-tree form needs arity 3",
        });
    }
    let a = reduced(y, i)?;
    let m = SquareMatrix::from_fn(a.n(), |r, c| a.get(&[r + 1, c + 1]));
    if m.n() % 2 == 1 {
        return Ok(R::zero());
    }
    Ok(pfaffian(&m)?.signed(parity_sign(i - 1)))
}

/// Both sides of
/// `(x_{a_1} - x_{a_2}) ... (x_{a_1} - x_{a_k})
///   = sum_{mu=1}^k x_{a_{mu+1}} ... x_{a_k} x_{a_1} ... x_{a_{mu-1}}`
/// in the algebra on `n` generators.
pub fn circular_shift_sides<R: Ring>(
    n: usize,
    alpha: &[usize],
) -> Result<(GrassmannElement<R>, GrassmannElement<R>)> {
    let k = alpha.len();
    if k.is_multiple_of(2) {
        return Err(Error::EvenLength(k));
    }
    let first = GrassmannElement::generator(n, alpha[0])?;
    let mut lhs = GrassmannElement::one(n)?;
    for &a in &alpha[1..] {
        let factor = first.checked_sub(&GrassmannElement::generator(n, a)?)?;
        lhs = lhs.checked_mul(&factor)?;
    }
    let mut rhs = GrassmannElement::zero(n)?;
    for mu in 0..k {
        let labels: Vec<usize> = alpha[mu + 1..].iter().chain(&alpha[..mu]).copied().collect();
        rhs = rhs.checked_add(&GrassmannElement::monomial(n, &labels, R::one())?)?;
    }
    Ok((lhs, rhs))
}

/// Whether the circular-shift expansion holds exactly for `alpha`.
pub fn circular_shift_identity_check(n: usize, alpha: &[usize]) -> Result<bool> {
    let (lhs, rhs) = circular_shift_sides::<Rational>(n, alpha)?;
    Ok(lhs == rhs)
}

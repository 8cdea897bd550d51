//! Determinants and minors.
//!
//! Elimination is fraction-free (Bareiss) and is the default. The Leibniz sum
//! over permutations and the Gaussian Berezin integral over paired variables
//! `int (dpsibar dpsi)_ent exp(-psibar A psi)` serve as independent checks.

use crate::error::{Error, Result};
use crate::grassmann::{entangled_order, psi, psibar, GrassmannElement, MAX_GENERATORS};
use crate::linalg::{IndexSet, SquareMatrix};
use crate::ring::{parity_sign, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetBackend {
    Leibniz,
    Elimination,
    Berezin,
}

pub fn det<R: Ring>(a: &SquareMatrix<R>) -> R {
    det_bareiss(a)
}

pub fn det_with<R: Ring>(a: &SquareMatrix<R>, backend: DetBackend) -> Result<R> {
    match backend {
        DetBackend::Leibniz => Ok(det_leibniz(a)),
        DetBackend::Elimination => Ok(det_bareiss(a)),
        DetBackend::Berezin => det_berezin(a),
    }
}

/// Sum over all permutations, generated by Heap's algorithm (each step is one
/// transposition, so the sign alternates).
pub fn det_leibniz<R: Ring>(a: &SquareMatrix<R>) -> R {
    let n = a.n();
    if n == 0 {
        return R::one();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut sign = 1i8;
    let term = |perm: &[usize]| {
        let mut t = a[(0, perm[0])].clone();
        for (r, &c) in perm.iter().enumerate().skip(1) {
            if t.is_zero() {
                break;
            }
            t = t * &a[(r, c)];
        }
        t
    };
    let mut total = term(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            sign = -sign;
            total += term(&perm).signed(sign);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    total
}

/// Bareiss elimination. Every division is exact in an integral domain, which
/// both coefficient rings are.
pub fn det_bareiss<R: Ring>(a: &SquareMatrix<R>) -> R {
    let n = a.n();
    if n == 0 {
        return R::one();
    }
    let mut m: Vec<Vec<R>> = a.rows().map(|r| r.to_vec()).collect();
    let mut sign = 1i8;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul_ref(&m[k][k]) - m[i][k].mul_ref(&m[k][j]);
                m[i][j] = num
                    .try_div(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone().signed(sign)
}

/// `exp(-psibar A psi)` in the paired algebra with `2n` generators.
pub fn pair_gaussian<R: Ring>(a: &SquareMatrix<R>) -> Result<GrassmannElement<R>> {
    let n = a.n();
    if 2 * n > MAX_GENERATORS || n == 0 {
        return Err(Error::GeneratorCount {
            n: 2 * n,
            max: MAX_GENERATORS,
        });
    }
    let mut action = GrassmannElement::zero(2 * n)?;
    for i in 1..=n {
        for j in 1..=n {
            let c = &a[(i - 1, j - 1)];
            if c.is_zero() {
                continue;
            }
            let term = GrassmannElement::monomial(2 * n, &[psibar(i), psi(j)], -c.clone())?;
            action = action.checked_add(&term)?;
        }
    }
    action.exp()
}

pub fn det_berezin<R: Ring>(a: &SquareMatrix<R>) -> Result<R> {
    if a.n() == 0 {
        return Ok(R::one());
    }
    let weight = pair_gaussian(a)?;
    Ok(weight
        .berezin_integrate(&entangled_order(a.n()))?
        .scalar_part())
}

/// `det(A_{I^c, J^c})`.
pub fn minor_det<R: Ring>(a: &SquareMatrix<R>, rows: &IndexSet, cols: &IndexSet) -> Result<R> {
    Ok(det(&a.submatrix_without(rows, cols)?))
}

/// `(-1)^(sum I + sum J) det(A_{I^c, J^c})`; for `|I| = |J| = 1` this is the
/// cofactor `(com A)_ij`.
pub fn signed_minor<R: Ring>(a: &SquareMatrix<R>, rows: &IndexSet, cols: &IndexSet) -> Result<R> {
    Ok(minor_det(a, rows, cols)?.signed(parity_sign(rows.sum() + cols.sum())))
}

/// `int (dpsibar dpsi)_ent psi_{j_1} psibar_{i_1} ... psi_{j_p} psibar_{i_p}
/// exp(-psibar A psi)`, which equals [`signed_minor`].
pub fn signed_minor_berezin<R: Ring>(
    a: &SquareMatrix<R>,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Result<R> {
    let n = a.n();
    rows.check_within(n)?;
    cols.check_within(n)?;
    if rows.len() != cols.len() {
        return Err(Error::IndexSetSizes(rows.len(), cols.len()));
    }
    let labels: Vec<usize> = cols
        .iter()
        .zip(rows.iter())
        .flat_map(|(j, i)| [psi(j), psibar(i)])
        .collect();
    let insertion = GrassmannElement::monomial(2 * n, &labels, R::one())?;
    let integrand = insertion.checked_mul(&pair_gaussian(a)?)?;
    Ok(integrand
        .berezin_integrate(&entangled_order(n))?
        .scalar_part())
}

/// `(A^{-1})_ij` as the ratio of `int psi_i psibar_j exp(-psibar A psi)` to
/// `int exp(-psibar A psi)`. `None` if the ratio is not defined in `R`.
pub fn inverse_entry_berezin<R: Ring>(a: &SquareMatrix<R>, i: usize, j: usize) -> Result<Option<R>> {
    let n = a.n();
    for idx in [i, j] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    let weight = pair_gaussian(a)?;
    let order = entangled_order(n);
    let insertion = GrassmannElement::monomial(2 * n, &[psi(i), psibar(j)], R::one())?;
    let num = insertion
        .checked_mul(&weight)?
        .berezin_integrate(&order)?
        .scalar_part();
    let den = weight.berezin_integrate(&order)?.scalar_part();
    Ok(num.try_div(&den))
}

/// Gauss-Jordan inverse; `None` if singular or a pivot is not invertible in `R`.
pub fn inverse<R: Ring>(a: &SquareMatrix<R>) -> Option<SquareMatrix<R>> {
    let n = a.n();
    let mut m: Vec<Vec<R>> = a.rows().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<R>> = SquareMatrix::<R>::identity(n).rows().map(|r| r.to_vec()).collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, p);
        inv.swap(k, p);
        let pivot = m[k][k].clone();
        for c in 0..n {
            m[k][c] = m[k][c].try_div(&pivot)?;
            inv[k][c] = inv[k][c].try_div(&pivot)?;
        }
        for r in 0..n {
            if r == k || m[r][k].is_zero() {
                continue;
            }
            let f = m[r][k].clone();
            for c in 0..n {
                let (mk, ik) = (m[k][c].clone(), inv[k][c].clone());
                m[r][c] = m[r][c].clone() - f.mul_ref(&mk);
                inv[r][c] = inv[r][c].clone() - f.mul_ref(&ik);
            }
        }
    }
    SquareMatrix::from_rows(inv).ok()
}

//! Conversion between normalized `±1` Hadamard matrices and their `{0,1}`
//! presentation.
//!
//! A normalized Hadamard matrix of order `n` has an all-`+1` first row and
//! column. Dropping that border and mapping `+1 -> 0`, `-1 -> 1` on the
//! remaining `(n-1) x (n-1)` block gives the `{0,1}` presentation; the map is
//! invertible because the border is fixed.

use crate::error::{Error, Result};
use crate::matrix::{BitMatrix, SignMatrix};

fn row_product(h: &SignMatrix, i: usize, j: usize) -> i64 {
    h.row(i)
        .iter()
        .zip(h.row(j))
        .map(|(&x, &y)| i64::from(x) * i64::from(y))
        .sum()
}

fn column_product(h: &SignMatrix, i: usize, j: usize) -> i64 {
    (0..h.size())
        .map(|k| i64::from(h.get(k, i)) * i64::from(h.get(k, j)))
        .sum()
}

fn check_products(h: &SignMatrix, product: impl Fn(&SignMatrix, usize, usize) -> i64) -> bool {
    let n = h.size();
    (0..n).all(|i| {
        (i..n).all(|j| {
            let expected = if i == j { n as i64 } else { 0 };
            product(h, i, j) == expected
        })
    })
}

/// True iff the rows of `h` are pairwise orthogonal, i.e. `H Hᵀ = n I`.
pub fn verify_sign_hadamard(h: &SignMatrix) -> bool {
    check_products(h, row_product)
}

/// Column version of [`verify_sign_hadamard`]: `Hᵀ H = n I`.
///
/// For square matrices the two conditions are equivalent; this exists so the
/// equivalence can be tested rather than assumed.
pub fn verify_sign_hadamard_columns(h: &SignMatrix) -> bool {
    check_products(h, column_product)
}

pub fn is_normalized(h: &SignMatrix) -> bool {
    let n = h.size();
    (0..n).all(|k| h.get(0, k) == 1 && h.get(k, 0) == 1)
}

/// Brings a Hadamard matrix to normalized form: negates every row starting
/// with `-1`, then every column starting with `-1`.
pub fn normalize(h: &SignMatrix) -> Result<SignMatrix> {
    if !verify_sign_hadamard(h) {
        return Err(Error::NotHadamard);
    }
    let mut out = h.clone();
    for i in 0..out.size() {
        if out.get(i, 0) < 0 {
            out.negate_row(i);
        }
    }
    for j in 0..out.size() {
        if out.get(0, j) < 0 {
            out.negate_column(j);
        }
    }
    Ok(out)
}

/// `{0,1}` presentation of a normalized matrix of side `n >= 2`.
pub fn zo_from_pm(h: &SignMatrix) -> Result<BitMatrix> {
    let n = h.size();
    if n < 2 {
        return Err(Error::Malformed(format!(
            "side {n} is too small for a {{0,1}} presentation"
        )));
    }
    if !is_normalized(h) {
        return Err(Error::NotNormalized);
    }
    Ok(BitMatrix::from_fn(n - 1, |i, j| h.get(i + 1, j + 1) < 0))
}

/// Inverse of [`zo_from_pm`]: restores the all-`+1` border and maps
/// `t[i][j]` to `1 - 2 t[i][j]`.
pub fn pm_from_zo(t: &BitMatrix) -> SignMatrix {
    SignMatrix::from_fn(t.size() + 1, |i, j| {
        if i == 0 || j == 0 {
            1
        } else {
            1 - 2 * t.get(i - 1, j - 1) as i8
        }
    })
}

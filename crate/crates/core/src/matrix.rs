//! Shared domain types: `{0,1}` and `{-1,+1}` square matrices and the search
//! parameters derived from an admissible order.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

/// Parameters of a search for `m x m` Hadamard matrices in `{0,1}` presentation.
///
/// `m = 4q - 1`; every row has weight `b = 2q` and every pair of distinct rows
/// shares `a = q` ones. `n = m + 1` is the order of the corresponding `±1`
/// Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchParams {
    pub m: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl SearchParams {
    pub fn new(m: usize) -> Result<Self> {
        validate_order(m)
    }
}

/// Checks that `m >= 3` and `m ≡ 3 (mod 4)` and derives the search parameters.
pub fn validate_order(m: usize) -> Result<SearchParams> {
    if m < 3 || m % 4 != 3 {
        return Err(Error::InvalidOrder { m });
    }
    let q = (m + 1) / 4;
    Ok(SearchParams {
        m,
        q,
        a: q,
        b: 2 * q,
        n: m + 1,
    })
}

/// Standard scalar product of two bit vectors.
pub fn dot(u: &[u8], v: &[u8]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.iter().zip(v).filter(|(x, y)| **x & **y == 1).count())
}

/// Square matrix over `{0,1}`, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    m: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(m: usize) -> Self {
        let words = m.div_ceil(WORD_BITS);
        Self {
            m,
            words,
            data: vec![0; m * words],
        }
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                if f(i, j) {
                    t.set(i, j, true);
                }
            }
        }
        t
    }

    /// Builds a matrix from explicit rows, rejecting ragged input and entries
    /// other than 0 and 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        let mut t = Self::zeros(m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => t.set(i, j, true),
                    _ => {
                        return Err(Error::Malformed(format!(
                            "entry ({}, {}) is {x}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        assert!(i < self.m && j < self.m, "index ({i}, {j}) out of bounds");
        ((self.data[i * self.words + j / WORD_BITS] >> (j % WORD_BITS)) & 1) as u8
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / WORD_BITS];
        let bit = 1u64 << (j % WORD_BITS);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    fn packed_row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.m).map(|j| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.m).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.m).map(|i| self.get(i, j)).collect()
    }

    /// Scalar product of rows `i` and `j` by popcount.
    pub fn row_dot(&self, i: usize, j: usize) -> usize {
        self.packed_row(i)
            .iter()
            .zip(self.packed_row(j))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_dot(i, i)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, |i, j| self.get(j, i) == 1)
    }

    /// Returns the matrix with columns reordered so that new column `j` is old
    /// column `order[j]`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.m);
        Self::from_fn(self.m, |i, j| self.get(i, order[j]) == 1)
    }

    pub fn permute_rows(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.m);
        Self::from_fn(self.m, |i, j| self.get(order[i], j) == 1)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.m, self.m)?;
        fmt::Display::fmt(self, f)
    }
}

/// One row per line, entries as `0`/`1` characters.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            for j in 0..self.m {
                f.write_str(if self.get(i, j) == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Square matrix over `{-1,+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    n: usize,
    data: Vec<i8>,
}

impl SignMatrix {
    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if x != 1 && x != -1 {
                    return Err(Error::Malformed(format!(
                        "entry ({}, {}) is {x}, expected -1 or +1",
                        i + 1,
                        j + 1
                    )));
                }
                data.push(x);
            }
        }
        Ok(Self { n, data })
    }

    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = f(i, j);
                debug_assert!(x == 1 || x == -1);
                data.push(x);
            }
        }
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of bounds");
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i * self.n..(i + 1) * self.n] {
            *x = -*x;
        }
    }

    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.n {
            self.data[i * self.n + j] = -self.data[i * self.n + j];
        }
    }

    pub fn permute_rows(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n);
        Self::from_fn(self.n, |i, j| self.get(order[i], j))
    }

    pub fn permute_columns(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n);
        Self::from_fn(self.n, |i, j| self.get(i, order[j]))
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix({}x{})", self.n, self.n)?;
        fmt::Display::fmt(self, f)
    }
}

/// One row per line, entries as `+`/`-` characters.
impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for &x in self.row(i) {
                f.write_str(if x > 0 { "+" } else { "-" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> Vec<u8> {
        s.bytes().map(|c| c - b'0').collect()
    }

    #[test]
    fn validate_order_examples() {
        let p = validate_order(15).unwrap();
        assert_eq!(
            p,
            SearchParams {
                m: 15,
                q: 4,
                a: 4,
                b: 8,
                n: 16
            }
        );
        let p = validate_order(3).unwrap();
        assert_eq!((p.m, p.q, p.a, p.b, p.n), (3, 1, 1, 2, 4));
    }

    #[test]
    fn invalid_orders_carry_m() {
        for m in [0, 1, 2, 4, 5, 6, 13, 14] {
            let err = validate_order(m).unwrap_err();
            assert!(matches!(err, Error::InvalidOrder { m: bad } if bad == m));
            let msg = err.to_string();
            assert!(msg.contains(&format!("m={m}")), "{msg}");
            assert!(msg.contains("incorrect size for Hadamard matrices"));
        }
    }

    #[test]
    fn dot_examples() {
        assert_eq!(
            dot(&bits("111111110000000"), &bits("111100001111000")).unwrap(),
            4
        );
        assert_eq!(dot(&bits("000"), &bits("111")).unwrap(), 0);
        assert_eq!(dot(&bits("1111000"), &bits("1111000")).unwrap(), 4);
        assert!(matches!(
            dot(&bits("10"), &bits("101")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        assert!(BitMatrix::from_rows(&[vec![1, 0], vec![1]]).is_err());
        assert!(BitMatrix::from_rows(&[vec![2u8]]).is_err());
        assert!(BitMatrix::from_rows::<Vec<u8>>(&[]).is_err());
        assert!(SignMatrix::from_rows(&[vec![1i8, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn wide_rows_span_several_words() {
        let m = 131;
        let t = BitMatrix::from_fn(m, |i, j| (i * 7 + j * 3) % 5 < 2);
        for i in [0, 64, 130] {
            for j in [1, 63, 129] {
                assert_eq!(t.row_dot(i, j), dot(&t.row(i), &t.row(j)).unwrap());
            }
        }
        assert_eq!(t.transpose().transpose(), t);
    }

    proptest! {
        #[test]
        fn dot_is_symmetric(pair in (1usize..80).prop_flat_map(|n| (
            proptest::collection::vec(0u8..2, n),
            proptest::collection::vec(0u8..2, n),
        ))) {
            let (u, v) = pair;
            prop_assert_eq!(dot(&u, &v).unwrap(), dot(&v, &u).unwrap());
            prop_assert_eq!(dot(&u, &u).unwrap(), u.iter().filter(|&&x| x == 1).count());
        }

        #[test]
        fn weight_is_twice_overlap(q in 1usize..200) {
            let p = validate_order(4 * q - 1).unwrap();
            prop_assert_eq!(p.b, 2 * p.a);
            prop_assert_eq!(p.n, p.m + 1);
        }

        #[test]
        fn packed_dot_matches_slice_dot(rows in (1usize..20).prop_flat_map(|m|
            proptest::collection::vec(proptest::collection::vec(0u8..2, m), m))) {
            let t = BitMatrix::from_rows(&rows).unwrap();
            for i in 0..t.size() {
                for j in 0..t.size() {
                    prop_assert_eq!(t.row_dot(i, j), dot(&rows[i], &rows[j]).unwrap());
                }
            }
        }
    }
}

//! Gram matrices of rows and columns of a `{0,1}` matrix and the Hadamard
//! test built on them.
//!
//! An `m x m` matrix over `{0,1}` is a Hadamard matrix in `{0,1}` presentation
//! iff `m = 4q - 1` and its row Gram matrix has `2q` on the diagonal and `q`
//! everywhere else. The same holds with columns in place of rows.

use crate::matrix::BitMatrix;

/// Symmetric matrix of pairwise scalar products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    m: usize,
    entries: Vec<usize>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.m.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.m).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Target Gram pattern for side `m = 4a - 1`: `b = 2a` on the diagonal,
/// `a` off the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramTarget {
    pub m: usize,
    pub a: usize,
    pub b: usize,
}

impl GramTarget {
    /// `None` unless `m > 1` and `m ≡ 3 (mod 4)`.
    pub fn for_order(m: usize) -> Option<Self> {
        if m < 3 || m % 4 != 3 {
            return None;
        }
        let a = (m + 1) / 4;
        Some(Self { m, a, b: 2 * a })
    }

    pub fn matches(&self, g: &GramMatrix) -> bool {
        g.size() == self.m
            && (0..self.m).all(|i| {
                (0..self.m).all(|j| g.get(i, j) == if i == j { self.b } else { self.a })
            })
    }
}

pub fn gram_rows(t: &BitMatrix) -> GramMatrix {
    let m = t.size();
    let mut entries = vec![0; m * m];
    for i in 0..m {
        for j in i..m {
            let d = t.row_dot(i, j);
            entries[i * m + j] = d;
            entries[j * m + i] = d;
        }
    }
    GramMatrix { m, entries }
}

pub fn gram_cols(t: &BitMatrix) -> GramMatrix {
    gram_rows(&t.transpose())
}

/// Row test: true iff `t` is a Hadamard matrix in `{0,1}` presentation.
pub fn is_hadamard_zo(t: &BitMatrix) -> bool {
    GramTarget::for_order(t.size()).is_some_and(|target| matches_rows(t, &target))
}

/// Column test; agrees with [`is_hadamard_zo`] on every input.
pub fn is_hadamard_zo_by_columns(t: &BitMatrix) -> bool {
    GramTarget::for_order(t.size()).is_some_and(|target| target.matches(&gram_cols(t)))
}

// Same as `target.matches(&gram_rows(t))` but stops at the first bad entry.
fn matches_rows(t: &BitMatrix, target: &GramTarget) -> bool {
    let m = t.size();
    (0..m).all(|i| {
        t.row_weight(i) == target.b && (0..i).all(|j| t.row_dot(i, j) == target.a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pattern(m: usize, diag: usize, off: usize) -> Vec<Vec<usize>> {
        (0..m)
            .map(|i| (0..m).map(|j| if i == j { diag } else { off }).collect())
            .collect()
    }

    #[test]
    fn sample_order_15_gram() {
        let t = samples::order_15();
        assert_eq!(gram_rows(&t).rows(), pattern(15, 8, 4));
        assert_eq!(gram_cols(&t).rows(), pattern(15, 8, 4));
        assert!(is_hadamard_zo(&t));
        assert!(is_hadamard_zo_by_columns(&t));
    }

    #[test]
    fn order_three_gram() {
        let t = samples::order_3();
        assert_eq!(
            gram_rows(&t).rows(),
            vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]
        );
        assert!(is_hadamard_zo(&t));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(gram_rows(&BitMatrix::zeros(3)).rows(), pattern(3, 0, 0));
        let id = BitMatrix::from_rows(&[[1u8, 0], [0, 1]]).unwrap();
        assert_eq!(gram_cols(&id).rows(), vec![vec![1, 0], vec![0, 1]]);
        assert!(!is_hadamard_zo(&BitMatrix::from_fn(3, |_, _| true)));
        // Side 1 is never admissible, whatever the entry.
        assert!(!is_hadamard_zo(&BitMatrix::from_rows(&[[1u8]]).unwrap()));
        assert!(!is_hadamard_zo(&BitMatrix::from_rows(&[[0u8]]).unwrap()));
        // Right row pattern but inadmissible side.
        assert!(!is_hadamard_zo(&BitMatrix::zeros(4)));
    }

    #[test]
    fn hadamard_gram_entries_scale_with_order() {
        for t in [samples::order_3(), samples::order_15()] {
            let n = t.size() + 1;
            let g = gram_rows(&t);
            for i in 0..t.size() {
                for j in 0..t.size() {
                    let delta = usize::from(i == j);
                    assert_eq!(4 * g.get(i, j), n * (delta + 1));
                }
            }
        }
    }

    #[test]
    fn row_and_column_tests_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for m in [3, 7, 11] {
            for _ in 0..1000 {
                let t = BitMatrix::from_fn(m, |_, _| rng.gen_bool(0.5));
                assert_eq!(is_hadamard_zo(&t), is_hadamard_zo_by_columns(&t));
            }
        }
    }

    proptest! {
        #[test]
        fn gram_is_symmetric_and_bounded(rows in (1usize..16).prop_flat_map(|m|
            proptest::collection::vec(proptest::collection::vec(0u8..2, m), m))) {
            let t = BitMatrix::from_rows(&rows).unwrap();
            let g = gram_rows(&t);
            prop_assert!(g.is_symmetric());
            prop_assert!((0..t.size()).all(|i| (0..t.size()).all(|j| g.get(i, j) <= t.size())));
            prop_assert_eq!(gram_cols(&t), gram_rows(&t.transpose()));
            let full = GramTarget::for_order(t.size()).is_some_and(|target| target.matches(&g));
            prop_assert_eq!(full, is_hadamard_zo(&t));
        }
    }
}

//! Brute-force enumeration of Hadamard matrices in `{0,1}` presentation with
//! the standard first two rows, for cross-checking the generator at small
//! orders.
//!
//! Every weight-`2q` vector of length `m` is tabulated; rows 3..m are chosen
//! from that table by plain depth-first search, keeping a candidate only if
//! it meets every row placed so far in exactly `q` ones. Each complete matrix
//! is put into canonical column order and encoded as a group list.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::generator::initial_rows;
use crate::matrix::{dot, BitMatrix, SearchParams};
use crate::partition::{canonicalize, decode_row, encode_matrix, PartitionMatrix};

/// Largest order searched without an explicit override.
pub const DEFAULT_COST_CAP: usize = 7;

/// All length-`m` bit vectors of weight `w`, in lexicographic order.
pub fn weight_vectors(m: usize, w: usize) -> Vec<Vec<u8>> {
    fn rec(m: usize, w: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let ones = prefix.iter().filter(|&&b| b == 1).count();
        if prefix.len() == m {
            if ones == w {
                out.push(prefix.clone());
            }
            return;
        }
        for bit in [0, 1] {
            let ones_after = ones + bit as usize;
            let left = m - prefix.len() - 1;
            if ones_after <= w && ones_after + left >= w {
                prefix.push(bit);
                rec(m, w, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m, w, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Returns the set of canonical group-list matrices.
///
/// Orders above [`DEFAULT_COST_CAP`] are refused unless `allow_large` is set;
/// order 11 takes minutes even optimized.
pub fn brute_force_canonical(
    params: &SearchParams,
    allow_large: bool,
) -> Result<BTreeSet<PartitionMatrix>> {
    let m = params.m;
    if m > DEFAULT_COST_CAP && !allow_large {
        return Err(Error::OrderTooLarge {
            m,
            cap: DEFAULT_COST_CAP,
        });
    }
    let candidates = weight_vectors(m, params.b);
    let (r1, r2) = initial_rows(params);
    let mut rows = vec![decode_row(&r1), decode_row(&r2)];
    let mut found = BTreeSet::new();
    search(params, &candidates, &mut rows, &mut found)?;
    Ok(found)
}

fn search(
    params: &SearchParams,
    candidates: &[Vec<u8>],
    rows: &mut Vec<Vec<u8>>,
    found: &mut BTreeSet<PartitionMatrix>,
) -> Result<()> {
    if rows.len() == params.m {
        let t = BitMatrix::from_rows(rows)?;
        found.insert(encode_matrix(&canonicalize(&t))?);
        return Ok(());
    }
    for c in candidates {
        let mut fits = true;
        for r in rows.iter() {
            if dot(c, r)? != params.a {
                fits = false;
                break;
            }
        }
        if fits {
            rows.push(c.clone());
            search(params, candidates, rows, found)?;
            rows.pop();
        }
    }
    Ok(())
}

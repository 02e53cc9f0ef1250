//! Replays the search with the historical stopping rule "emit once the row
//! index equals the number of groups in the row above", instead of stopping
//! at full depth. Under that rule a matrix can be emitted before all rows
//! exist, and complete matrices whose last rows do not meet the condition are
//! never emitted. The counts it yields (25 at m=7, 60481 at m=11) differ from
//! the full-depth counts (30 and 60480).
//!
//! Mirrors the original procedure step by step: exact rational elimination,
//! free variables scanned from 0 to their group size, dependent values kept
//! whenever every emitted count is positive (fractions included).

use hadamard_core::{generate, validate_order, CountSink, GenConfig};
use num_rational::Ratio;

type Q = Ratio<i64>;

#[derive(Default)]
struct Counts {
    emitted: u64,
    premature: u64,
}

fn rref(equations: &[(Vec<usize>, i64)], n: usize) -> Option<(Vec<Vec<Q>>, Vec<usize>)> {
    let mut a: Vec<Vec<Q>> = equations
        .iter()
        .map(|(vars, rhs)| {
            let mut row = vec![Q::from_integer(0); n + 1];
            for &s in vars {
                row[s] = Q::from_integer(1);
            }
            row[n] = Q::from_integer(*rhs);
            row
        })
        .collect();
    let zero = Q::from_integer(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != zero) else { continue };
        a.swap(r, p);
        let lead = a[r][c];
        a[r].iter_mut().for_each(|x| *x /= lead);
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != zero {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[n] != zero) {
        return None;
    }
    a.truncate(r);
    Some((a, pivots))
}

fn make_row(m: usize, q: i64, rows: &mut Vec<Vec<(u64, Q)>>, i: usize, counts: &mut Counts) {
    let parent = rows[i - 2].clone();
    let n = parent.len();
    let mut equations = vec![((0..n).collect::<Vec<_>>(), 2 * q)];
    let mut qq = 1u64;
    for _ in (1..i).rev() {
        let vars = (0..n).filter(|&s| (parent[s].0 / qq) % 2 == 0).collect();
        equations.push((vars, q));
        qq *= 2;
    }
    let Some((a, pivots)) = rref(&equations, n) else { return };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let upper: Vec<i64> = free.iter().map(|&s| parent[s].1.floor().to_integer()).collect();

    let mut vals = vec![0i64; free.len()];
    loop {
        let mut k = vec![Q::from_integer(0); n];
        for (&s, &v) in free.iter().zip(&vals) {
            k[s] = Q::from_integer(v);
        }
        for (row, &s) in a.iter().zip(&pivots) {
            k[s] = free
                .iter()
                .fold(row[n], |acc, &f| acc - row[f] * k[f]);
        }
        let mut child = Vec::new();
        for ((label, count), ks) in parent.iter().zip(&k) {
            if *ks != Q::from_integer(0) {
                child.push((2 * label, *ks));
            }
            let rest = count - ks;
            if rest != Q::from_integer(0) {
                child.push((2 * label + 1, rest));
            }
        }
        if child.iter().all(|(_, c)| *c > Q::from_integer(0)) {
            rows.truncate(i - 1);
            rows.push(child);
            if i == n {
                counts.emitted += 1;
                if i < m {
                    counts.premature += 1;
                }
            } else {
                make_row(m, q, rows, i + 1, counts);
            }
        }
        // Odometer, first free variable fastest.
        let mut r = 0;
        loop {
            if r == vals.len() {
                return;
            }
            if vals[r] < upper[r] {
                vals[r] += 1;
                break;
            }
            vals[r] = 0;
            r += 1;
        }
    }
}

fn replay(m: usize) -> Counts {
    let q = ((m + 1) / 4) as i64;
    let g = |pairs: &[(u64, i64)]| -> Vec<(u64, Q)> {
        pairs.iter().map(|&(l, c)| (l, Q::from_integer(c))).collect()
    };
    let mut rows = vec![
        g(&[(0, 2 * q), (1, 2 * q - 1)]),
        g(&[(0, q), (1, q), (2, q), (3, q - 1)]),
    ];
    let mut counts = Counts::default();
    make_row(m, q, &mut rows, 3, &mut counts);
    counts
}

fn full_depth(m: usize) -> u64 {
    let mut count = CountSink::default();
    generate(&GenConfig::new(validate_order(m).unwrap()), &mut count).unwrap();
    count.0
}

#[test]
fn order_seven_counts() {
    let c = replay(7);
    assert_eq!(c.emitted, 25);
    assert_eq!(c.premature, 1);
    assert_eq!(full_depth(7), 30);
}

#[test]
fn order_eleven_counts() {
    let c = replay(11);
    assert_eq!(c.emitted, 60481);
    assert_eq!(c.premature, 1);
    assert_eq!(full_depth(11), 60480);
}

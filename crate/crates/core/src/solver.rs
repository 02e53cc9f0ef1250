//! Per-row linear systems and their bounded integer solutions.
//!
//! A new row `i` is described by how many of its ones fall into each group of
//! row `i-1`: variable `k_s` counts the ones placed in parent group `s`, with
//! `0 <= k_s <= count_s`. The row weight must be `2q` and the overlap with
//! every earlier row `j` must be `q`. Row `j` has a one in group `s` exactly
//! when bit `i-1-j` of the group's label is 0, so each constraint is a sum of
//! variables equal to `2q` or `q`.
//!
//! Solutions are enumerated exactly. The system is brought to reduced row
//! echelon form over the rationals with pivots taken in variable order; the
//! non-pivot (free) variables are then scanned in odometer order starting
//! from all zeros, the lowest-indexed free variable changing fastest. An
//! assignment is kept when every pivot variable comes out integral and inside
//! its bounds. Partial assignments whose pivot variables can no longer reach
//! their bounds are skipped wholesale; this does not change the order of the
//! solutions that remain.

use std::fmt;

use num_rational::Ratio;

use crate::matrix::SearchParams;
use crate::partition::GroupList;

/// `Σ_{s in vars} k_s = rhs`, all coefficients 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub vars: Vec<usize>,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSystem {
    row: usize,
    bounds: Vec<usize>,
    equations: Vec<Equation>,
}

impl RowSystem {
    /// # Panics
    ///
    /// If an equation names a variable outside `bounds`.
    pub fn new(row: usize, bounds: Vec<usize>, equations: Vec<Equation>) -> Self {
        for eq in &equations {
            assert!(
                eq.vars.iter().all(|&s| s < bounds.len()),
                "equation refers to an unknown variable"
            );
        }
        Self {
            row,
            bounds,
            equations,
        }
    }

    /// Index (1-based) of the row this system builds.
    pub fn row(&self) -> usize {
        self.row
    }

    /// Upper bound of each variable; lower bounds are 0.
    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    /// True if `k` is inside the box and satisfies every equation.
    pub fn is_solution(&self, k: &[usize]) -> bool {
        k.len() == self.num_vars()
            && k.iter().zip(&self.bounds).all(|(x, ub)| x <= ub)
            && self
                .equations
                .iter()
                .all(|eq| eq.vars.iter().map(|&s| k[s]).sum::<usize>() == eq.rhs)
    }
}

/// One equation per line, e.g. `k0+k2=2`.
impl fmt::Display for RowSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            let lhs: Vec<String> = eq.vars.iter().map(|s| format!("k{s}")).collect();
            let lhs = if lhs.is_empty() {
                "0".to_string()
            } else {
                lhs.join("+")
            };
            writeln!(f, "{lhs}={}", eq.rhs)?;
        }
        Ok(())
    }
}

/// Builds the system for row `i` from row `i-1` (`parent`).
///
/// The first equation fixes the weight at `2q`; then, for `j = i-1` down to
/// 1, the overlap with row `j` is fixed at `q`. That makes `i` equations.
pub fn build_system(parent: &GroupList, i: usize, params: &SearchParams) -> RowSystem {
    debug_assert_eq!(parent.depth() + 1, i, "parent must be row i-1");
    let groups = parent.groups();
    let mut equations = Vec::with_capacity(i);
    equations.push(Equation {
        vars: (0..groups.len()).collect(),
        rhs: params.b,
    });
    for shift in 0..i - 1 {
        let vars = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| (g.label >> shift) & 1 == 0)
            .map(|(s, _)| s)
            .collect();
        equations.push(Equation {
            vars,
            rhs: params.a,
        });
    }
    RowSystem::new(i, groups.iter().map(|g| g.count).collect(), equations)
}

/// Pivot variable expressed through the free ones:
/// `scale * k[var] = constant - Σ coeffs[f] * free_value[f]`.
#[derive(Debug, Clone)]
struct Dependent {
    var: usize,
    scale: i64,
    constant: i64,
    coeffs: Vec<i64>,
    upper: i64,
}

#[derive(Debug, Clone)]
struct Plan {
    num_vars: usize,
    free: Vec<usize>,
    free_upper: Vec<i64>,
    deps: Vec<Dependent>,
    // rest[l][r]: range of Σ coeffs * value over the first `l` free variables.
    rest: Vec<Vec<(i64, i64)>>,
}

type Q = Ratio<i64>;

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(mut a: i64, mut b: i64) -> i64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    a / gcd(a, b) * b
}

impl Plan {
    /// `None` when the equations are inconsistent.
    fn new(sys: &RowSystem) -> Option<Self> {
        let n = sys.num_vars();
        let mut rows: Vec<Vec<Q>> = sys
            .equations
            .iter()
            .map(|eq| {
                let mut row = vec![Q::from_integer(0); n + 1];
                for &s in &eq.vars {
                    row[s] += 1;
                }
                row[n] = Q::from_integer(eq.rhs as i64);
                row
            })
            .collect();

        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != Q::from_integer(0)) else {
                continue;
            };
            rows.swap(rank, p);
            let lead = rows[rank][col];
            for x in &mut rows[rank] {
                *x /= lead;
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                let factor = row[col];
                if r != rank && factor != Q::from_integer(0) {
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x -= factor * y;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|row| row[n] != Q::from_integer(0)) {
            return None;
        }

        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let free_upper: Vec<i64> = free.iter().map(|&f| sys.bounds[f] as i64).collect();
        let deps: Vec<Dependent> = pivots
            .iter()
            .zip(&rows)
            .map(|(&var, row)| {
                let scale = free
                    .iter()
                    .map(|&f| row[f])
                    .chain(std::iter::once(row[n]))
                    .fold(1, |acc, x| lcm(acc, *x.denom()));
                let to_int = |x: Q| (x * scale).to_integer();
                Dependent {
                    var,
                    scale,
                    constant: to_int(row[n]),
                    coeffs: free.iter().map(|&f| to_int(row[f])).collect(),
                    upper: sys.bounds[var] as i64,
                }
            })
            .collect();

        let mut rest = vec![vec![(0, 0); deps.len()]];
        for (l, &ub) in free_upper.iter().enumerate() {
            let next = deps
                .iter()
                .zip(&rest[l])
                .map(|(d, &(lo, hi))| {
                    let term = d.coeffs[l] * ub;
                    (lo + term.min(0), hi + term.max(0))
                })
                .collect();
            rest.push(next);
        }

        Some(Self {
            num_vars: n,
            free,
            free_upper,
            deps,
            rest,
        })
    }

    /// Whether the dependents can still land in their bounds when the first
    /// `unassigned` free variables are left open.
    fn feasible(&self, acc: &[i64], unassigned: usize) -> bool {
        self.deps
            .iter()
            .zip(acc)
            .zip(&self.rest[unassigned])
            .all(|((d, &value), &(lo, hi))| value - hi <= d.scale * d.upper && value - lo >= 0)
    }

    fn solution(&self, vals: &[i64], acc: &[i64]) -> Option<Vec<usize>> {
        let mut k = vec![0; self.num_vars];
        for (&f, &v) in self.free.iter().zip(vals) {
            k[f] = v as usize;
        }
        for (d, &value) in self.deps.iter().zip(acc) {
            if value % d.scale != 0 {
                return None;
            }
            let x = value / d.scale;
            if !(0..=d.upper).contains(&x) {
                return None;
            }
            k[d.var] = x as usize;
        }
        Some(k)
    }
}

/// Lazy stream of the bounded integer solutions of a [`RowSystem`], in the
/// order described in the module docs.
#[derive(Debug, Clone)]
pub struct Solutions {
    plan: Option<Plan>,
    vals: Vec<i64>,
    // acc[l]: dependents' right-hand sides once all but the first `l` free
    // variables are fixed.
    acc: Vec<Vec<i64>>,
    unassigned: usize,
    descending: bool,
    started: bool,
}

pub fn enumerate_solutions(sys: &RowSystem) -> Solutions {
    let plan = Plan::new(sys);
    let (nf, acc) = match &plan {
        Some(p) => {
            let nf = p.free.len();
            let mut acc = vec![vec![0; p.deps.len()]; nf + 1];
            acc[nf] = p.deps.iter().map(|d| d.constant).collect();
            (nf, acc)
        }
        None => (0, Vec::new()),
    };
    Solutions {
        plan,
        vals: vec![0; nf],
        acc,
        unassigned: nf,
        descending: true,
        started: false,
    }
}

impl Solutions {
    fn assign(&mut self, level: usize) {
        let plan = self.plan.as_ref().expect("active plan");
        let v = self.vals[level];
        let (lower, upper) = self.acc.split_at_mut(level + 1);
        for ((out, &prev), d) in lower[level].iter_mut().zip(&upper[0]).zip(&plan.deps) {
            *out = prev - d.coeffs[level] * v;
        }
    }
}

impl Iterator for Solutions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let nf = self.vals.len();
        if !self.started {
            self.started = true;
            let plan = self.plan.as_ref()?;
            if !plan.feasible(&self.acc[nf], nf) {
                self.plan = None;
                return None;
            }
        }
        loop {
            let plan = self.plan.as_ref()?;
            if self.descending {
                if self.unassigned == 0 {
                    self.descending = false;
                    if let Some(k) = plan.solution(&self.vals, &self.acc[0]) {
                        return Some(k);
                    }
                    continue;
                }
                let level = self.unassigned - 1;
                self.vals[level] = 0;
                self.assign(level);
                self.unassigned = level;
                let plan = self.plan.as_ref()?;
                if !plan.feasible(&self.acc[level], level) {
                    self.descending = false;
                }
            } else {
                // Advance the most recently assigned free variable.
                let level = self.unassigned;
                if level == nf {
                    self.plan = None;
                    return None;
                }
                let upper = plan.free_upper[level];
                if self.vals[level] >= upper {
                    self.unassigned += 1;
                    continue;
                }
                self.vals[level] += 1;
                self.assign(level);
                let plan = self.plan.as_ref()?;
                if plan.feasible(&self.acc[level], level) {
                    self.descending = true;
                }
            }
        }
    }
}

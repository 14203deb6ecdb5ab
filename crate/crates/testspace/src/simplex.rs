//! Two-phase primal simplex for dense standard-form programs.
//!
//! Minimizes `c x` subject to `A x = b`, `x >= 0`. Bland's rule picks both
//! the entering and leaving variable, which rules out cycling, and every
//! step is deterministic, so identical inputs give identical optima down to
//! the last bit. State polytopes arrive natively in standard form (test
//! rows sum to one, outcomes are nonnegative), hence no slack machinery.

use alloc::vec;
use alloc::vec::Vec;

const RC_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;
const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpResult {
    Optimal {
        x: Vec<f64>,
        objective: f64,
    },
    Infeasible,
    Unbounded,
    /// Iteration guard tripped; with Bland's rule this signals numerical
    /// breakdown rather than a real cycle.
    Stalled,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = 1.0 / self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v *= inv;
        }
        self.rhs[row] *= inv;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row];
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col];
            if factor != 0.0 {
                for (v, p) in self.rows[r].iter_mut().zip(&pivot_row) {
                    *v -= factor * p;
                }
                self.rhs[r] -= factor * pivot_rhs;
                // Clamp the tiny residue so later ratio tests stay clean.
                if self.rhs[r].abs() < 1e-13 {
                    self.rhs[r] = 0.0;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations for the cost vector `cost` over the columns
    /// `0..limit`, leaving the tableau at the optimal basis.
    fn optimize(&mut self, cost: &[f64], limit: usize) -> Result<(), LpResult> {
        for _ in 0..MAX_ITERATIONS {
            // Reduced costs via the basis cost vector.
            let basis_cost: Vec<f64> = self.basis.iter().map(|&b| cost[b]).collect();
            let mut entering = None;
            for (col, &col_cost) in cost.iter().enumerate().take(limit) {
                if self.basis.contains(&col) {
                    continue;
                }
                let mut rc = col_cost;
                for (r, bc) in basis_cost.iter().enumerate() {
                    rc -= bc * self.rows[r][col];
                }
                if rc < -RC_TOL {
                    entering = Some(col);
                    break; // Bland: smallest eligible index enters.
                }
            }
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let coeff = self.rows[r][col];
                if coeff > PIVOT_TOL {
                    let ratio = self.rhs[r] / coeff;
                    let better = match leaving {
                        None => true,
                        Some((best_row, best_ratio)) => {
                            ratio < best_ratio - PIVOT_TOL
                                || (ratio < best_ratio + PIVOT_TOL
                                    && self.basis[r] < self.basis[best_row])
                        }
                    };
                    if better {
                        leaving = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Err(LpResult::Unbounded);
            };
            self.pivot(row, col);
        }
        Err(LpResult::Stalled)
    }

    fn solution(&self, vars: usize) -> Vec<f64> {
        let mut x = vec![0.0; vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < vars {
                x[b] = self.rhs[r].max(0.0);
            }
        }
        x
    }
}

/// Minimizes `c x` subject to `a x = b`, `x >= 0`.
///
/// Rows of `a` may be redundant; phase one detects both infeasibility and
/// redundancy and drops the latter.
pub(crate) fn minimize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpResult {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == m);
    if m == 0 {
        // Only x >= 0 constrains; minimum is 0 iff no negative cost.
        if c.iter().all(|&v| v >= -RC_TOL) {
            return LpResult::Optimal {
                x: vec![0.0; n],
                objective: 0.0,
            };
        }
        return LpResult::Unbounded;
    }
    // Sign-normalize so every right-hand side is nonnegative, then append
    // one artificial identity column per row.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (row, &bv) in a.iter().zip(b) {
        let sign = if bv < 0.0 { -1.0 } else { 1.0 };
        let mut r: Vec<f64> = row.iter().map(|&v| sign * v).collect();
        r.extend((0..m).map(|_| 0.0));
        rows.push(r);
        rhs.push(sign * bv);
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[n + i] = 1.0;
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    // Phase one: minimize the artificial mass.
    let mut phase1_cost = vec![0.0; n + m];
    for cost in phase1_cost.iter_mut().skip(n) {
        *cost = 1.0;
    }
    if let Err(outcome) = tab.optimize(&phase1_cost, n + m) {
        return outcome;
    }
    let artificial_mass: f64 = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&b, _)| b >= n)
        .map(|(_, &v)| v)
        .sum();
    if artificial_mass > 1e-8 {
        return LpResult::Infeasible;
    }
    // Drive zero-level artificials out of the basis; rows that offer no
    // pivot are redundant constraints and can be dropped.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            let col = (0..n).find(|&j| tab.rows[r][j].abs() > 1e-9);
            match col {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase two over the original columns only.
    let mut phase2_cost = c.to_vec();
    phase2_cost.extend((0..m).map(|_| 0.0));
    if let Err(outcome) = tab.optimize(&phase2_cost, n) {
        return outcome;
    }
    let x = tab.solution(n);
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpResult::Optimal { x, objective }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn optimizes_over_a_simplex() {
        // min -x0 over the probability triangle: optimum -1 at (1,0,0).
        let a = vec![vec![1.0, 1.0, 1.0]];
        let out = minimize(&a, &[1.0], &[-1.0, 0.0, 0.0]);
        match out {
            LpResult::Optimal { x, objective } => {
                assert!((objective + 1.0).abs() < 1e-9);
                assert!((x[0] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let out = minimize(&a, &[1.0, 2.0], &[0.0, 0.0]);
        assert_eq!(out, LpResult::Infeasible);
    }

    #[test]
    fn tolerates_redundant_rows() {
        // The second row repeats the first.
        let a = vec![vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]];
        let out = minimize(&a, &[1.0, 1.0], &[0.0, -1.0, 0.0]);
        match out {
            LpResult::Optimal { objective, .. } => assert!((objective + 1.0).abs() < 1e-9),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn detects_unbounded_programs() {
        // x0 = x1 free to grow, cost pushes it down without bound.
        let a = vec![vec![1.0, -1.0]];
        let out = minimize(&a, &[0.0], &[-1.0, 0.0]);
        assert_eq!(out, LpResult::Unbounded);
    }

    #[test]
    fn handles_equality_with_negative_rhs() {
        // -x0 = -1 normalizes to x0 = 1.
        let a = vec![vec![-1.0, 0.0]];
        let out = minimize(&a, &[-1.0], &[1.0, 1.0]);
        match out {
            LpResult::Optimal { x, objective } => {
                assert!((x[0] - 1.0).abs() < 1e-9);
                assert!((objective - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}

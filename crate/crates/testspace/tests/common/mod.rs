//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracles here deliberately avoid the library's own algorithms:
//! vertices come from support-subset enumeration instead of basis
//! enumeration, the nonsignalling check walks the full quantified
//! definition instead of per-system reductions, and recovery quality is
//! cross-checked against a simplex grid search.

// Each integration target compiles this module separately and uses its
// own subset of the helpers.
#![allow(dead_code)]

use testspace::composite::JointState;
use testspace::space::TestSpace;
use testspace::statespace::{State, StatePolytope};

/// Every built-in single-system space, with a label for messages.
pub fn builtin_spaces() -> Vec<(String, TestSpace)> {
    let mut pool = Vec::new();
    for d in 1..=5 {
        pool.push((format!("classical({d})"), TestSpace::classical(d).unwrap()));
    }
    for d in 1..=3 {
        for k in 1..=3 {
            pool.push((
                format!("process({d},{k})"),
                TestSpace::process(d, k).unwrap(),
            ));
        }
    }
    pool.push(("overlapping".to_string(), TestSpace::overlapping_example()));
    pool
}

/// Solves the square system `m x = rhs` by Gaussian elimination with
/// partial pivoting; `None` when singular. Test-side only.
// The elimination reads one row while updating another; indexing keeps
// it in the textbook shape.
#[allow(clippy::needless_range_loop)]
fn solve_square(m: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = rhs.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&p, &q| a[p][col].abs().partial_cmp(&a[q][col].abs()).unwrap())?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in col..=n {
                    let sub = factor * a[col][k];
                    a[row][k] -= sub;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

/// Vertex oracle: a feasible point is a vertex exactly when the
/// constraint columns over its support are linearly independent, so
/// enumerate candidate supports directly. Returns sorted unique
/// probability vectors.
pub fn oracle_vertices(space: &TestSpace) -> Vec<Vec<f64>> {
    let m = space.outcome_count();
    assert!(m <= 16, "oracle meant for desk-scale spaces");
    let rows: Vec<Vec<f64>> = space
        .tests()
        .iter()
        .map(|test| {
            let mut row = vec![0.0; m];
            for &o in test {
                row[o] = 1.0;
            }
            row
        })
        .collect();
    let mut found: Vec<Vec<f64>> = Vec::new();
    'subsets: for mask in 1u32..(1 << m) {
        let support: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let s = support.len();
        // Normal equations over the support columns.
        let mut gram = vec![vec![0.0; s]; s];
        let mut lin = vec![0.0; s];
        for (i, &ci) in support.iter().enumerate() {
            for (j, &cj) in support.iter().enumerate() {
                gram[i][j] = rows.iter().map(|r| r[ci] * r[cj]).sum();
            }
            lin[i] = rows.iter().map(|r| r[ci]).sum();
        }
        let Some(solution) = solve_square(&gram, &lin) else {
            continue; // dependent support columns: not a vertex support
        };
        // Strict positivity keeps each vertex at its minimal support.
        if solution.iter().any(|&v| v < 1e-9) {
            continue;
        }
        let mut full = vec![0.0; m];
        for (&c, &v) in support.iter().zip(&solution) {
            full[c] = v;
        }
        // Must satisfy every test exactly, not just in least squares.
        for row in &rows {
            let sum: f64 = row.iter().zip(&full).map(|(r, v)| r * v).sum();
            if (sum - 1.0).abs() > 1e-9 {
                continue 'subsets;
            }
        }
        if !found
            .iter()
            .any(|v| v.iter().zip(&full).all(|(a, b)| (a - b).abs() <= 1e-9))
        {
            found.push(full);
        }
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap());
    found
}

/// Full nonsignalling oracle: for every nonempty proper subset of
/// systems, every outcome tuple on the rest, and every pair of test
/// tuples on the subset, the two summed probabilities must agree.
/// Returns the worst disagreement.
pub fn oracle_nonsignalling_deviation(js: &JointState) -> f64 {
    let n = js.system_count();
    let factors = js.product().factors();
    let mut worst = 0.0f64;
    for mask in 1u32..(1u32 << n) - 1 {
        let varied: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let fixed: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        // All outcome tuples on the fixed systems.
        let fixed_dims: Vec<usize> = fixed.iter().map(|&i| factors[i].outcome_count()).collect();
        let mut fixed_tuples = vec![vec![]];
        for &d in &fixed_dims {
            fixed_tuples = fixed_tuples
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..d).map(move |o| {
                        let mut next = t.clone();
                        next.push(o);
                        next
                    })
                })
                .collect();
        }
        // All test tuples on the varied systems.
        let test_counts: Vec<usize> = varied.iter().map(|&i| factors[i].test_count()).collect();
        let mut test_tuples = vec![vec![]];
        for &c in &test_counts {
            test_tuples = test_tuples
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..c).map(move |s| {
                        let mut next = t.clone();
                        next.push(s);
                        next
                    })
                })
                .collect();
        }
        for fixed_outcomes in &fixed_tuples {
            let summed: Vec<f64> = test_tuples
                .iter()
                .map(|tests| {
                    // Sum over all outcome tuples of the chosen tests.
                    let mut outcome_sets: Vec<&[usize]> = Vec::new();
                    for (slot, &system) in varied.iter().enumerate() {
                        outcome_sets.push(&factors[system].tests()[tests[slot]]);
                    }
                    let mut total = 0.0;
                    let mut stack = vec![(0usize, vec![0usize; 0])];
                    while let Some((depth, chosen)) = stack.pop() {
                        if depth == varied.len() {
                            let mut idx = vec![0usize; n];
                            for (slot, &system) in varied.iter().enumerate() {
                                idx[system] = chosen[slot];
                            }
                            for (slot, &system) in fixed.iter().enumerate() {
                                idx[system] = fixed_outcomes[slot];
                            }
                            total += js.entry(&idx);
                            continue;
                        }
                        for &o in outcome_sets[depth] {
                            let mut next = chosen.clone();
                            next.push(o);
                            stack.push((depth + 1, next));
                        }
                    }
                    total
                })
                .collect();
            for i in 0..summed.len() {
                for j in i + 1..summed.len() {
                    worst = worst.max((summed[i] - summed[j]).abs());
                }
            }
        }
    }
    worst
}

/// Grid-search recovery oracle: smallest Euclidean residual of
/// `sum_k w_k columns_k - target` over weight vectors whose entries are
/// multiples of `1/grid`.
pub fn oracle_grid_residual(columns: &[Vec<f64>], target: &[f64], grid: usize) -> f64 {
    fn recurse(
        columns: &[Vec<f64>],
        target: &[f64],
        grid: usize,
        slot: usize,
        remaining: usize,
        partial: &mut Vec<f64>,
        best: &mut f64,
    ) {
        if slot + 1 == columns.len() {
            let w = remaining as f64 / grid as f64;
            let residual: f64 = target
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    let fit = partial[i] + w * columns[slot][i];
                    (fit - t) * (fit - t)
                })
                .sum::<f64>()
                .sqrt();
            if residual < *best {
                *best = residual;
            }
            return;
        }
        for take in 0..=remaining {
            let w = take as f64 / grid as f64;
            let saved = partial.clone();
            for (p, c) in partial.iter_mut().zip(&columns[slot]) {
                *p += w * c;
            }
            recurse(
                columns,
                target,
                grid,
                slot + 1,
                remaining - take,
                partial,
                best,
            );
            *partial = saved;
        }
    }
    assert!(!columns.is_empty());
    let mut best = f64::INFINITY;
    let mut partial = vec![0.0; target.len()];
    recurse(columns, target, grid, 0, grid, &mut partial, &mut best);
    best
}

/// Deterministic mixture of `k` random direct products on a power of
/// `space`, for exercising nonsignalling paths. Built from library
/// sampling with per-call seeds; the result is always nonsignalling.
pub fn random_product_mixture(
    space: &TestSpace,
    systems: usize,
    components: usize,
    seed: u64,
) -> JointState {
    use testspace::composite::{direct_product, ProductSpace};

    let polytope = StatePolytope::analyze(space).unwrap();
    let mut weights = Vec::with_capacity(components);
    let mut joints: Vec<JointState> = Vec::with_capacity(components);
    for c in 0..components {
        let factor_states: Vec<State> = polytope
            .sample_states(
                systems,
                seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(c as u64 + 1)),
            )
            .unwrap();
        joints.push(direct_product(&factor_states).unwrap());
        // Simple deterministic positive weights.
        weights.push(1.0 + ((seed as usize + 3 * c) % 7) as f64);
    }
    let total: f64 = weights.iter().sum();
    let product = ProductSpace::power(space, systems).unwrap();
    let entries = product.entry_count().unwrap();
    let mut tensor = vec![0.0; entries];
    for (w, joint) in weights.iter().zip(&joints) {
        for (t, v) in tensor.iter_mut().zip(joint.tensor()) {
            *t += (w / total) * v;
        }
    }
    JointState::new(product, tensor).unwrap()
}

//! Dense real linear algebra sized for small state spaces.
//!
//! Matrices are row lists. Everything here is `O(n^3)` textbook material
//! with partial pivoting; the spaces this crate handles keep dimensions in
//! the tens, so clarity and determinism win over sophistication.

// Elimination and rotation kernels read and write across rows; indexed
// loops keep them in the textbook shape.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

pub(crate) fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

/// Indices of a maximal linearly independent subset of `rows`, greedy in
/// row order so earlier rows win ties.
pub(crate) fn independent_rows(rows: &[Vec<f64>], tol: f64) -> Vec<usize> {
    let mut reduced: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut picked = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut work = row.clone();
        for (pivot_col, basis) in &reduced {
            let factor = work[*pivot_col];
            if factor != 0.0 {
                for (w, b) in work.iter_mut().zip(basis) {
                    *w -= factor * b;
                }
            }
        }
        let (pivot_col, pivot_val) = work
            .iter()
            .enumerate()
            .map(|(j, &v)| (j, v.abs()))
            .fold((0, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if pivot_val > tol {
            let scale = 1.0 / work[pivot_col];
            for w in work.iter_mut() {
                *w *= scale;
            }
            reduced.push((pivot_col, work));
            picked.push(i);
        }
    }
    picked
}

pub(crate) fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    independent_rows(rows, tol).len()
}

/// Basis of the null space of the `rows x n` system `A x = 0`.
pub(crate) fn nullspace(rows: &[Vec<f64>], n: usize, tol: f64) -> Vec<Vec<f64>> {
    // Forward elimination to normalized rows with recorded pivot columns.
    let mut reduced: Vec<(usize, Vec<f64>)> = Vec::new();
    for row in rows {
        let mut work = row.clone();
        for (pivot_col, basis) in &reduced {
            let factor = work[*pivot_col];
            if factor != 0.0 {
                for (w, b) in work.iter_mut().zip(basis) {
                    *w -= factor * b;
                }
            }
        }
        let (pivot_col, pivot_val) = work
            .iter()
            .enumerate()
            .map(|(j, &v)| (j, v.abs()))
            .fold((0, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if pivot_val > tol {
            let scale = 1.0 / work[pivot_col];
            for w in work.iter_mut() {
                *w *= scale;
            }
            reduced.push((pivot_col, work));
        }
    }
    // Back elimination: clear each pivot column from every other row.
    for i in (0..reduced.len()).rev() {
        let (pc, basis) = reduced[i].clone();
        for (j, (_, other)) in reduced.iter_mut().enumerate() {
            if j != i {
                let factor = other[pc];
                if factor != 0.0 {
                    for (o, b) in other.iter_mut().zip(&basis) {
                        *o -= factor * b;
                    }
                }
            }
        }
    }
    let pivot_cols: Vec<usize> = reduced.iter().map(|(pc, _)| *pc).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; n];
        v[free] = 1.0;
        for (pc, row) in &reduced {
            v[*pc] = -row[free];
        }
        basis.push(v);
    }
    basis
}

/// Solves the square system `A x = b` by Gaussian elimination with partial
/// pivoting. `None` when the matrix is numerically singular.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let scale = m
        .iter()
        .flat_map(|r| r.iter().take(n))
        .fold(0.0f64, |s, &v| s.max(v.abs()))
        .max(1.0);
    for col in 0..n {
        let (pivot_row, pivot_val) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .fold((col, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if pivot_val <= 1e-13 * scale {
            return None;
        }
        m.swap(col, pivot_row);
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            if factor != 0.0 {
                for c in col..=n {
                    let sub = factor * m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for c in row + 1..n {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Gauss-Jordan inverse; `None` when singular.
pub(crate) fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            debug_assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |s, &v| s.max(v.abs()))
        .max(1.0);
    for col in 0..n {
        let (pivot_row, pivot_val) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .fold((col, 0.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if pivot_val <= 1e-13 * scale {
            return None;
        }
        m.swap(col, pivot_row);
        let inv_pivot = 1.0 / m[col][col];
        for c in 0..2 * n {
            m[col][c] *= inv_pivot;
        }
        for r in 0..n {
            if r != col {
                let factor = m[r][col];
                if factor != 0.0 {
                    for c in 0..2 * n {
                        let sub = factor * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn norm_1(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|c| a.iter().map(|r| r[c].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// One-norm condition number, `None` when singular.
pub(crate) fn condition_1(a: &[Vec<f64>]) -> Option<f64> {
    let inv = invert(a)?;
    Some(norm_1(a) * norm_1(&inv))
}

/// Modified Gram-Schmidt with re-orthogonalization; vectors whose residual
/// falls below `tol` relative to their norm are dropped.
pub(crate) fn orthonormalize(vecs: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vecs {
        let original = norm2(v).max(1.0);
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let coeff = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= coeff * bi;
                }
            }
        }
        let remaining = norm2(&w);
        if remaining > tol * original {
            let inv = 1.0 / remaining;
            for wi in w.iter_mut() {
                *wi *= inv;
            }
            basis.push(w);
        }
    }
    basis
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
pub(crate) fn symmetric_eigenvalues(sym: &[Vec<f64>]) -> Vec<f64> {
    let n = sym.len();
    let mut a: Vec<Vec<f64>> = sym.to_vec();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |s, &v| s.max(v.abs()))
        .max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(a[i][j].abs());
            }
        }
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= 1e-15 * scale {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    eig
}

//! Max-min selection over the nonnegative solutions of a linear system.

use alloc::vec;
use alloc::vec::Vec;

use super::decomp::{lstsq_with, svd};
use super::matrix::{norm, sub_vec, DenseMatrix};
use crate::error::{Error, Result};

const RANK_TOL: f64 = 1e-10;
const PIVOT_EPS: f64 = 1e-12;

/// Finds `c >= 0` with `||A c - b|| <= residual_tol` maximizing `min_i c_i`.
///
/// The search runs over the affine set `c0 + N z`, where `c0` is the
/// minimum-norm least-squares solution and `N` spans `ker A`, so equality is
/// kept exactly while the slack `t` in `c0 + N z >= t` is maximized by a
/// dense simplex with Bland's rule.
pub fn maxmin_lp(a: &DenseMatrix, b: &[f64], residual_tol: f64) -> Result<Vec<f64>> {
    let k = a.cols();
    if k == 0 || a.rows() == 0 {
        return Err(Error::EmptyInput);
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    if !(residual_tol > 0.0 && residual_tol.is_finite()) {
        return Err(Error::InvalidTolerance("residual_tol"));
    }

    let dec = svd(a);
    let c0 = lstsq_with(&dec, b, RANK_TOL);
    if residual(a, &c0, b)? > residual_tol {
        return Err(Error::Infeasible);
    }
    let r = dec.rank(RANK_TOL);
    let kernel = dec.v.select_columns(&(r..k).collect::<Vec<_>>());

    let mut c = if kernel.cols() == 0 {
        c0
    } else {
        let z = maximize_min(&kernel, &c0)?;
        let shift = kernel.mul_vec(&z)?;
        c0.iter().zip(&shift).map(|(x, y)| x + y).collect()
    };

    let floor = c.iter().copied().fold(f64::INFINITY, f64::min);
    if floor < -residual_tol {
        return Err(Error::Infeasible);
    }
    for v in &mut c {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    if residual(a, &c, b)? > residual_tol {
        return Err(Error::Infeasible);
    }
    Ok(c)
}

fn residual(a: &DenseMatrix, c: &[f64], b: &[f64]) -> Result<f64> {
    Ok(norm(&sub_vec(&a.mul_vec(c)?, b)))
}

/// Maximizes `t` subject to `c0 + N z >= t`, `t >= min c0`, with `z` free.
///
/// Shifting by `t0 = min c0` puts the origin in the feasible region:
/// variables are `(z+, z-, s)` with `s = t - t0 >= 0` and the rows read
/// `-N z+ + N z- + s <= c0 - t0`.
fn maximize_min(kernel: &DenseMatrix, c0: &[f64]) -> Result<Vec<f64>> {
    let (k, r) = (kernel.rows(), kernel.cols());
    let t0 = c0.iter().copied().fold(f64::INFINITY, f64::min);
    let nvars = 2 * r + 1;
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = vec![0.0; nvars];
        for j in 0..r {
            row[j] = -kernel[(i, j)];
            row[r + j] = kernel[(i, j)];
        }
        row[2 * r] = 1.0;
        rows.push(row);
    }
    let rhs: Vec<f64> = c0.iter().map(|&v| (v - t0).max(0.0)).collect();
    let mut objective = vec![0.0; nvars];
    objective[2 * r] = 1.0;

    let x = simplex_max(&rows, &rhs, &objective)?;
    Ok((0..r).map(|j| x[j] - x[r + j]).collect())
}

/// Maximizes `objective . x` over `rows x <= rhs`, `x >= 0`, for `rhs >= 0`.
///
/// Dense tableau with Bland's lowest-index rule, which cannot cycle.
pub fn simplex_max(rows: &[Vec<f64>], rhs: &[f64], objective: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    let nv = objective.len();
    if rhs.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: rhs.len() });
    }
    if rhs.iter().any(|&v| v < 0.0) {
        return Err(Error::Infeasible);
    }
    let width = nv + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for (i, row) in rows.iter().enumerate() {
        if row.len() != nv {
            return Err(Error::DimensionMismatch { expected: nv, found: row.len() });
        }
        t[i][..nv].copy_from_slice(row);
        t[i][nv + i] = 1.0;
        t[i][width - 1] = rhs[i];
    }
    for (j, &c) in objective.iter().enumerate() {
        t[m][j] = -c;
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    let max_pivots = 50 * (nv + m).max(1) * (m + 1);
    for _ in 0..max_pivots {
        let Some(enter) = (0..nv + m).find(|&j| t[m][j] < -PIVOT_EPS) else {
            let mut x = vec![0.0; nv];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < nv {
                    x[bv] = t[i][width - 1];
                }
            }
            return Ok(x);
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let a = t[i][enter];
            if a > PIVOT_EPS {
                let ratio = t[i][width - 1] / a;
                let better = match leave {
                    None => true,
                    Some(l) => ratio < best - PIVOT_EPS || (ratio <= best + PIVOT_EPS && basis[i] < basis[l]),
                };
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(p) = leave else { return Err(Error::Unbounded) };
        pivot(&mut t, p, enter);
        basis[p] = enter;
    }
    Err(Error::IterationLimit(max_pivots))
}

fn pivot(t: &mut [Vec<f64>], p: usize, q: usize) {
    let inv = 1.0 / t[p][q];
    for v in t[p].iter_mut() {
        *v *= inv;
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p {
            continue;
        }
        let f = row[q];
        if f != 0.0 {
            for (v, &pv) in row.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
            row[q] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn splits_symmetric_constraint_evenly() {
        // Two copies of the projector onto e1 in H_1: c1 + c2 = 1.
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let c = maxmin_lp(&a, &[1.0], 1e-9).unwrap();
        assert_abs_diff_eq!(c[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(c[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn unique_solution_is_returned() {
        let a = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let c = maxmin_lp(&a, &[2.0, 3.0], 1e-9).unwrap();
        assert_abs_diff_eq!(c[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn negative_unique_solution_is_infeasible() {
        let a = DenseMatrix::identity(2);
        assert_eq!(maxmin_lp(&a, &[1.0, -1.0], 1e-9), Err(Error::Infeasible));
    }

    #[test]
    fn inconsistent_system_is_infeasible() {
        let a = DenseMatrix::from_rows(&[vec![1.0], vec![1.0]]).unwrap();
        assert_eq!(maxmin_lp(&a, &[1.0, 2.0], 1e-9), Err(Error::Infeasible));
    }

    #[test]
    fn simplex_reports_unbounded() {
        let rows = [vec![1.0, -1.0]];
        assert_eq!(simplex_max(&rows, &[1.0], &[0.0, 1.0]), Err(Error::Unbounded));
    }

    #[test]
    fn simplex_small_program() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
        let rows = [vec![1.0, 2.0], vec![3.0, 1.0]];
        let x = simplex_max(&rows, &[4.0, 6.0], &[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.6, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 1.2, epsilon = 1e-12);
    }
}

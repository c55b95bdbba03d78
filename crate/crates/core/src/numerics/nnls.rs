//! Lawson-Hanson active-set nonnegative least squares.

use alloc::vec;
use alloc::vec::Vec;

use super::decomp::lstsq;
use super::matrix::{norm, sub_vec, DenseMatrix};
use crate::error::{Error, Result};

/// Minimizer of `||A c - b||_2` over `c >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NnlsSolution {
    pub x: Vec<f64>,
    pub residual: f64,
    /// Number of variables moved into the passive set.
    pub iterations: usize,
}

const SUBPROBLEM_RANK_TOL: f64 = 1e-13;

/// Solves `min ||A c - b||` subject to `c >= 0`.
///
/// The entering variable is the one with the largest positive component of
/// the negative gradient `A^T (b - A c)`; ties go to the lowest index.
/// Fails with [`Error::IterationLimit`] after `10 * k` entering steps.
pub fn nnls(a: &DenseMatrix, b: &[f64]) -> Result<NnlsSolution> {
    nnls_warm(a, b, &[])
}

/// [`nnls`] started from an arbitrary initial passive set.
///
/// The optimum is global, so any start reaches the same residual; this is
/// used to probe solver completeness.
pub fn nnls_warm(a: &DenseMatrix, b: &[f64], initial_passive: &[usize]) -> Result<NnlsSolution> {
    let (m, k) = (a.rows(), a.cols());
    if k == 0 || m == 0 {
        return Err(Error::EmptyInput);
    }
    if b.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: b.len() });
    }
    if b.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }

    let scale = a.frobenius_norm() * norm(b).max(1.0);
    let grad_tol = 1e-13 * scale.max(f64::MIN_POSITIVE);
    let max_iter = 10 * k;

    let mut x = vec![0.0; k];
    let mut passive = vec![false; k];
    if !initial_passive.is_empty() {
        let mut p: Vec<usize> = initial_passive.iter().copied().filter(|&j| j < k).collect();
        p.sort_unstable();
        p.dedup();
        let z = solve_on(a, b, &p)?;
        for (&j, &zj) in p.iter().zip(&z) {
            if zj > 0.0 {
                x[j] = zj;
                passive[j] = true;
            }
        }
    }

    let mut rejected = vec![false; k];
    let mut iterations = 0usize;
    loop {
        restore_feasibility(a, b, &mut x, &mut passive)?;

        let r = sub_vec(b, &a.mul_vec(&x)?);
        let w = a.tr_mul_vec(&r)?;
        let mut best: Option<usize> = None;
        for j in 0..k {
            if passive[j] || rejected[j] || w[j] <= grad_tol {
                continue;
            }
            if best.map_or(true, |bj| w[j] > w[bj]) {
                best = Some(j);
            }
        }
        let Some(j) = best else { break };

        iterations += 1;
        if iterations > max_iter {
            return Err(Error::IterationLimit(max_iter));
        }

        passive[j] = true;
        let p = indices(&passive);
        let z = solve_on(a, b, &p)?;
        let zj = p.iter().position(|&i| i == j).map(|pos| z[pos]).unwrap_or(0.0);
        if zj <= 0.0 {
            // Column is numerically dependent on the passive set.
            passive[j] = false;
            rejected[j] = true;
            iterations -= 1;
            continue;
        }
        rejected.iter_mut().for_each(|r| *r = false);
    }

    let residual = norm(&sub_vec(&a.mul_vec(&x)?, b));
    Ok(NnlsSolution { x, residual, iterations })
}

/// Inner loop: moves `x` toward the unconstrained least-squares solution on
/// the passive set, dropping variables that hit zero, until that solution is
/// strictly positive.
fn restore_feasibility(a: &DenseMatrix, b: &[f64], x: &mut [f64], passive: &mut [bool]) -> Result<()> {
    loop {
        let p = indices(passive);
        if p.is_empty() {
            x.iter_mut().for_each(|v| *v = 0.0);
            return Ok(());
        }
        let z = solve_on(a, b, &p)?;
        if z.iter().all(|&v| v > 0.0) {
            x.iter_mut().for_each(|v| *v = 0.0);
            for (&j, &zj) in p.iter().zip(&z) {
                x[j] = zj;
            }
            return Ok(());
        }
        let mut alpha = f64::INFINITY;
        let mut hit = p[0];
        for (&j, &zj) in p.iter().zip(&z) {
            if zj <= 0.0 {
                let t = x[j] / (x[j] - zj);
                if t < alpha {
                    alpha = t;
                    hit = j;
                }
            }
        }
        for (&j, &zj) in p.iter().zip(&z) {
            x[j] += alpha * (zj - x[j]);
        }
        x[hit] = 0.0;
        for &j in &p {
            if x[j] <= 0.0 {
                x[j] = 0.0;
                passive[j] = false;
            }
        }
    }
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect()
}

fn solve_on(a: &DenseMatrix, b: &[f64], cols: &[usize]) -> Result<Vec<f64>> {
    lstsq(&a.select_columns(cols), b, SUBPROBLEM_RANK_TOL)
}

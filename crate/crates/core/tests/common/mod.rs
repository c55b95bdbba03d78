#![allow(dead_code)]

use fusionscale::numerics::orthonormalize;
use fusionscale::{DenseMatrix, FrameItem, FusionFrame, Subspace, ToleranceConfig};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| StandardNormal.sample(rng)).collect();
    DenseMatrix::new(rows, cols, data).unwrap()
}

pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let cols: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(rng, n)).collect();
    orthonormalize(&cols, 1e-10).unwrap()
}

pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Subspace {
    let vs: Vec<Vec<f64>> = (0..d).map(|_| gaussian_vec(rng, n)).collect();
    Subspace::from_vectors(&vs, 1e-10).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let g = gaussian_matrix(rng, n, n);
    g.add(&g.transpose()).unwrap().scale(0.5)
}

/// Generic random fusion frame: `k` random subspaces with random dimensions
/// and weights, redrawn until it is a frame.
pub fn random_frame(rng: &mut ChaCha8Rng, n: usize, k: usize, weighted: bool) -> FusionFrame {
    loop {
        let items = (0..k)
            .map(|_| {
                let d = rng.random_range(1..=n.max(2) - 1).min(n);
                let w = if weighted { rng.random_range(0.5..2.0) } else { 1.0 };
                FrameItem::new(random_subspace(rng, n, d), w)
            })
            .collect();
        let f = FusionFrame::new(items).unwrap();
        if f.is_frame(&ToleranceConfig::for_dim(n)) {
            return f;
        }
    }
}

/// Rotated union of `partitions` random block partitions of the axes:
/// strictly scalable by construction, usually with excess.
pub fn random_coordinate_frame(rng: &mut ChaCha8Rng, n: usize, partitions: usize) -> FusionFrame {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for _ in 0..partitions {
        let blocks = rng.random_range(1..=n);
        let mut parts = vec![Vec::new(); blocks];
        for i in 0..n {
            parts[rng.random_range(0..blocks)].push(i);
        }
        sets.extend(parts.into_iter().filter(|p| !p.is_empty()));
    }
    let u = random_orthogonal(rng, n);
    let items = sets
        .iter()
        .map(|s| FrameItem::new(Subspace::coordinate(n, s).unwrap().transformed(&u, 1e-10).unwrap(), rng.random_range(0.5..2.0)))
        .collect();
    FusionFrame::new(items).unwrap()
}

/// Independent feasibility oracle for `sum c_i P_i = I`, `c >= 0`, on the
/// full `n^2`-row system: some vertex of the feasible set is the unique
/// least-squares solution on its support, so trying every support decides
/// feasibility exactly.
pub fn oracle_feasible(frame: &FusionFrame, tol: f64) -> bool {
    use nalgebra::{DMatrix, DVector};
    let n = frame.ambient_dim();
    let k = frame.len();
    let cols: Vec<Vec<f64>> = frame.items().iter().map(|it| it.subspace.projector().as_slice().to_vec()).collect();
    let b = DVector::from_column_slice(DenseMatrix::identity(n).as_slice());
    (1u32..(1 << k)).any(|mask| {
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let a = DMatrix::from_fn(n * n, idx.len(), |r, c| cols[idx[c]][r]);
        let Ok(x) = a.clone().svd(true, true).solve(&b, 1e-12) else { return false };
        (&a * &x - &b).norm() <= tol && x.iter().all(|&v| v >= -1e-12)
    })
}

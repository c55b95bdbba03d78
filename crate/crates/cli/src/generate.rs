//! Seeded random frames.

use fusionscale::fixtures::Fixture;
use fusionscale::numerics::orthonormalize;
use fusionscale::{FrameItem, FusionFrame, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::CliError;

const RANK_TOL: f64 = 1e-10;

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// A unit-weight frame in `R^dim` with subspaces of the given dimensions.
///
/// With `orthogonal` the subspaces are consecutive blocks of one random
/// orthonormal basis, so they are mutually orthogonal and their dimensions
/// must add up to at most `dim`. Otherwise each subspace independently
/// spans standard-normal vectors.
pub fn generate(dim: usize, dims: &[usize], seed: u64, orthogonal: bool) -> Result<Fixture, CliError> {
    if dim == 0 {
        return Err(CliError::InvalidSpec("--dim must be positive".into()));
    }
    if dims.is_empty() {
        return Err(CliError::InvalidSpec("--subspace-dims is empty".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d == 0 || d > dim) {
        return Err(CliError::InvalidSpec(format!("subspace dimension {d} outside 1..={dim}")));
    }
    let total: usize = dims.iter().sum();
    if orthogonal && total > dim {
        return Err(CliError::InvalidSpec(format!(
            "orthogonal subspaces of total dimension {total} do not fit in dimension {dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(dims.len());
    if orthogonal {
        let vectors: Vec<Vec<f64>> = (0..dim).map(|_| gaussian(&mut rng, dim)).collect();
        let q = orthonormalize(&vectors, RANK_TOL)?;
        if q.cols() < total {
            return Err(CliError::InvalidSpec(format!("seed {seed} drew a singular matrix")));
        }
        let mut start = 0;
        for (i, &d) in dims.iter().enumerate() {
            let block = q.select_columns(&(start..start + d).collect::<Vec<_>>());
            items.push(FrameItem::labeled(Subspace::from_orthonormal(block)?, 1.0, format!("V{}", i + 1)));
            start += d;
        }
    } else {
        for (i, &d) in dims.iter().enumerate() {
            let vectors: Vec<Vec<f64>> = (0..d).map(|_| gaussian(&mut rng, dim)).collect();
            let subspace = Subspace::from_independent(&vectors, RANK_TOL)
                .map_err(|_| CliError::InvalidSpec(format!("seed {seed} drew dependent vectors")))?;
            items.push(FrameItem::labeled(subspace, 1.0, format!("V{}", i + 1)));
        }
    }
    Ok(Fixture { frame: FusionFrame::new(items)?, decomposition: None })
}

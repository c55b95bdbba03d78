mod common;

use common::*;
use fusionscale::{DenseMatrix, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projector_is_symmetric_idempotent(seed in any::<u64>(), n in 1usize..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.random_range(1..=n);
        let s = random_subspace(&mut rng, n, d);
        let p = s.projector();
        prop_assert!(p.asymmetry() <= 1e-12);
        prop_assert!(p.matmul(&p).unwrap().distance(&p).unwrap() <= 1e-10);
        prop_assert!((p.trace() - d as f64).abs() <= 1e-10);
    }

    #[test]
    fn orthogonality_formulations_agree(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_orthogonal(&mut rng, n);
        let split = rng.random_range(1..n);
        let a = fusionscale::Subspace::coordinate(n, &(0..split).collect::<Vec<_>>()).unwrap().transformed(&u, 1e-10).unwrap();
        let b = if rng.random_bool(0.5) {
            fusionscale::Subspace::coordinate(n, &(split..n).collect::<Vec<_>>()).unwrap().transformed(&u, 1e-10).unwrap()
        } else {
            random_subspace(&mut rng, n, n - split)
        };
        let pp = a.projector().matmul(&b.projector()).unwrap().frobenius_norm();
        prop_assert_eq!(a.is_orthogonal_to(&b, 1e-8).unwrap(), pp <= 1e-8);
    }

    #[test]
    fn direct_sum_adds_dimensions(seed in any::<u64>(), n in 2usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d1 = rng.random_range(1..n);
        let d2 = rng.random_range(1..=n);
        let a = random_subspace(&mut rng, n, d1);
        let b = random_subspace(&mut rng, n, d2);
        match a.direct_sum(&b, 1e-10) {
            Ok(s) => prop_assert_eq!(s.dim(), d1 + d2),
            Err(Error::OverlappingSubspaces) => prop_assert!(d1 + d2 > n),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn projector_is_unitarily_equivariant(seed in any::<u64>(), n in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.random_range(1..=n);
        let s = random_subspace(&mut rng, n, d);
        let u = random_orthogonal(&mut rng, n);
        let lhs = s.transformed(&u, 1e-10).unwrap().projector();
        let rhs = u.matmul(&s.projector()).unwrap().matmul(&u.transpose()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-9);
    }
}

#[test]
fn rank_deficient_transform_is_rejected() {
    let s = fusionscale::Subspace::coordinate(3, &[0, 1]).unwrap();
    let m = DenseMatrix::from_diagonal(&[1.0, 0.0, 1.0]);
    assert!(s.transformed(&m, 1e-10).is_err());
}

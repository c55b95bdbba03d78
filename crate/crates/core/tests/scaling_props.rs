mod common;

use common::*;
use fusionscale::fixtures::{self, Fixture};
use fusionscale::numerics::{nnls, nnls_warm};
use fusionscale::scaling::*;
use fusionscale::{Error, ExcessDecomposition, ExcessSpec, FrameItem, FusionFrame, Subspace, ToleranceConfig};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(f: &FusionFrame) -> ToleranceConfig {
    ToleranceConfig::for_dim(f.ambient_dim())
}

fn any_frame(rng: &mut ChaCha8Rng) -> FusionFrame {
    let n = rng.random_range(2..=5);
    match rng.random_range(0..3) {
        0 => {
            let p = rng.random_range(1..=3);
            random_coordinate_frame(rng, n, p)
        }
        1 => {
            let k = rng.random_range(n..=n + 3);
            random_frame(rng, n, k, true)
        }
        _ => {
            // Many random lines: strictly scalable with positive probability.
            let k = rng.random_range(n + 1..=3 * n);
            random_frame_of_lines(rng, n, k)
        }
    }
}

fn random_frame_of_lines(rng: &mut ChaCha8Rng, n: usize, k: usize) -> FusionFrame {
    loop {
        let items = (0..k).map(|_| FrameItem::new(random_subspace(rng, n, 1), 1.0)).collect();
        let f = FusionFrame::new(items).unwrap();
        if f.is_frame(&cfg(&f)) {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn strict_solutions_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = any_frame(&mut rng);
        let c = cfg(&f);
        let sol = solve_scaling(&f, &c).unwrap();
        match sol.status {
            ScalingStatus::StrictlyScalable => {
                let g: Vec<f64> = sol.gamma.iter().map(|g| g.unwrap()).collect();
                prop_assert!(verify_scaling(&f, &g).unwrap() <= c.residual_tol);
                for (gi, it) in g.iter().zip(f.items()) {
                    prop_assert!(*gi >= c.positivity_eps.sqrt() / it.weight * (1.0 - 1e-12));
                }
                prop_assert!(sol.min_coefficient >= c.positivity_eps);
            }
            ScalingStatus::ScalableWithZeroWeights => {
                prop_assert!(sol.residual <= c.residual_tol && sol.min_coefficient < c.positivity_eps);
            }
            ScalingStatus::Infeasible => prop_assert!(sol.residual > c.residual_tol),
        }
    }

    #[test]
    fn infeasibility_survives_restarts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = any_frame(&mut rng);
        let c = cfg(&f);
        let sol = solve_scaling(&f, &c).unwrap();
        if sol.status == ScalingStatus::Infeasible {
            let (a, b) = projector_system(&f);
            let base = nnls(&a, &b).unwrap();
            prop_assert!((base.residual - sol.nnls_residual).abs() <= 1e-12);
            for _ in 0..10 {
                let size = rng.random_range(0..=f.len());
                let passive = sample(&mut rng, f.len(), size).into_vec();
                let again = nnls_warm(&a, &b, &passive).unwrap();
                prop_assert!(again.residual >= base.residual - 1e-12);
            }
        }
    }

    #[test]
    fn solver_agrees_with_dense_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=4);
        let k = rng.random_range(2..=5);
        let f = match rng.random_range(0..3) {
            0 => random_frame(&mut rng, n, k, true),
            1 => random_frame_of_lines(&mut rng, n, k.max(n)),
            _ => random_coordinate_frame(&mut rng, n, 2),
        };
        prop_assume!(f.len() <= 5);
        let c = cfg(&f);
        let sol = solve_scaling(&f, &c).unwrap();
        prop_assert_eq!(sol.status != ScalingStatus::Infeasible, oracle_feasible(&f, c.residual_tol));
    }

    #[test]
    fn status_is_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = any_frame(&mut rng);
        let u = random_orthogonal(&mut rng, f.ambient_dim());
        let g = f.transformed(&u, 1e-10).unwrap();
        let c = cfg(&f);
        let (sf, sg) = (solve_scaling(&f, &c).unwrap(), solve_scaling(&g, &c).unwrap());
        prop_assert_eq!(sf.status, sg.status);
        if sf.status.is_strict() {
            let gamma: Vec<f64> = sf.gamma.iter().map(|x| x.unwrap()).collect();
            prop_assert!(verify_scaling(&g, &gamma).unwrap() <= c.residual_tol);
        }
    }

    #[test]
    fn tight_shortcut_matches_general_path(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=5);
        // A single block partition repeated is tight with bound `copies`.
        let copies = rng.random_range(1..=3);
        let base = random_coordinate_frame(&mut rng, n, 1);
        let mut items = Vec::new();
        for _ in 0..copies {
            items.extend(base.items().iter().map(|it| FrameItem::new(it.subspace.clone(), 1.0)));
        }
        let f = FusionFrame::new(items).unwrap();
        let b = f.frame_bounds();
        prop_assert!((b.upper - b.lower).abs() <= 1e-12);
        let c = cfg(&f);
        let fast = solve_scaling(&f, &c).unwrap();
        let slow = solve_scaling_general(&f, &c).unwrap();
        prop_assert_eq!(fast.selection, Selection::TightShortcut);
        prop_assert!(fast.status.is_strict() && slow.status.is_strict());
        for (x, y) in fast.coefficients.iter().zip(&slow.coefficients) {
            prop_assert!((x - 1.0 / b.lower).abs() <= 1e-9);
            prop_assert!((x - y).abs() <= 1e-8);
        }
    }

    #[test]
    fn riesz_scalability_matches_orthogonality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=6);
        let f = random_riesz(&mut rng, n);
        let c = cfg(&f);
        let sol = solve_scaling(&f, &c).unwrap();
        let r = check_riesz_scalable(&f, &sol, &c).unwrap();
        prop_assert!(r.condition("three formulations agree").unwrap().holds);
        prop_assert!(r.verdict_consistent_with_solver);
        prop_assert_eq!(sol.status.is_strict(), f.is_orthogonal_family(1e-8));
    }
}

/// Random Riesz basis of `R^n`, orthogonal about half of the time.
fn random_riesz(rng: &mut ChaCha8Rng, n: usize) -> FusionFrame {
    let m = if rng.random_bool(0.5) { random_orthogonal(rng, n) } else { gaussian_matrix(rng, n, n) };
    let mut items = Vec::new();
    let mut start = 0;
    while start < n {
        let d = rng.random_range(1..=n - start);
        let cols: Vec<Vec<f64>> = (start..start + d).map(|j| m.column(j)).collect();
        items.push(FrameItem::new(Subspace::from_vectors(&cols, 1e-10).unwrap(), rng.random_range(0.5..2.0)));
        start += d;
    }
    FusionFrame::new(items).unwrap()
}

fn line(v: Vec<f64>) -> Subspace {
    Subspace::from_vectors(&[v], 1e-10).unwrap()
}

/// Riesz basis of lines plus one standalone line.
fn random_one_excess(rng: &mut ChaCha8Rng) -> Fixture {
    let n = rng.random_range(2..=5);
    let orthogonal = rng.random_bool(0.5);
    let m = if orthogonal { random_orthogonal(rng, n) } else { gaussian_matrix(rng, n, n) };
    let lines: Vec<Vec<f64>> = (0..n).map(|j| m.column(j)).collect();
    let x = match rng.random_range(0..3) {
        0 => lines[rng.random_range(0..n)].clone(),
        1 => gaussian_vec(rng, n),
        _ => {
            // Combination of a few lines.
            let mut x = vec![0.0; n];
            let count = rng.random_range(1..=n);
            for j in sample(rng, n, count).into_iter() {
                let a: f64 = rng.random_range(-1.0..1.0);
                for (xi, li) in x.iter_mut().zip(&lines[j]) {
                    *xi += a * li;
                }
            }
            x
        }
    };
    let mut items = vec![FrameItem::new(line(x.clone()), 1.0)];
    items.extend(lines.into_iter().map(|l| FrameItem::new(line(l), 1.0)));
    let frame = FusionFrame::new(items).unwrap();
    Fixture { frame, decomposition: Some(ExcessDecomposition { riesz: (1..=n).collect(), excess: vec![ExcessSpec::new(x, Some(0))] }) }
}

/// Two hosted excess vectors in `R^3`: `V_1 = W_1 + span{x}`, `V_2 = W_2 + span{y}`.
fn random_two_excess_h3(rng: &mut ChaCha8Rng) -> Fixture {
    let m = if rng.random_bool(0.5) { random_orthogonal(rng, 3) } else { gaussian_matrix(rng, 3, 3) };
    let w: Vec<Vec<f64>> = (0..3).map(|j| m.column(j)).collect();
    let comb = |a: f64, u: &[f64], b: f64, v: &[f64]| -> Vec<f64> { u.iter().zip(v).map(|(p, q)| a * p + b * q).collect() };
    let (x, y) = if rng.random_bool(0.3) {
        (w[1].clone(), w[0].clone())
    } else {
        let (a, b, c, d) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        (comb(1.0, &w[1], a * b, &w[2]), comb(1.0, &w[0], c * d, &w[2]))
    };
    let frame = FusionFrame::new(vec![
        FrameItem::new(Subspace::from_vectors(&[w[0].clone(), x.clone()], 1e-10).unwrap(), 1.0),
        FrameItem::new(Subspace::from_vectors(&[w[1].clone(), y.clone()], 1e-10).unwrap(), 1.0),
        FrameItem::new(line(w[2].clone()), 1.0),
    ])
    .unwrap();
    Fixture {
        frame,
        decomposition: Some(ExcessDecomposition {
            riesz: vec![0, 1, 2],
            excess: vec![ExcessSpec::new(x, Some(0)), ExcessSpec::new(y, Some(1))],
        }),
    }
}

fn named_fixtures() -> Vec<Fixture> {
    vec![
        fixtures::one_excess_alpha(0.3, 5).unwrap(),
        fixtures::h4_beta([0.0, 0.0, 1.0, 0.0], 0.0).unwrap(),
        fixtures::h4_beta([1.0, 2.0, 0.5, 0.0], 0.7).unwrap(),
        fixtures::two_excess_h3().unwrap(),
        fixtures::two_excess_h4().unwrap(),
        fixtures::nonscalable_h3().unwrap(),
        fixtures::big_h7([1.0; 7], 1.0).unwrap(),
        fixtures::shift_trunc(2).unwrap(),
        fixtures::zdual_trunc(1, 1, 1).unwrap(),
        fixtures::zdual_trunc(1, 2, 3).unwrap(),
        fixtures::mercedes_benz().unwrap(),
        fixtures::repeated_subspace(2, 0.0).unwrap(),
        fixtures::tight2_h9().unwrap(),
        fixtures::one_subspace_h4().unwrap(),
        fixtures::ortho_excess_h3().unwrap(),
    ]
}

/// Runs every applicable checker; returns how many produced a report.
fn assert_consistent(fx: &Fixture, what: &str) -> usize {
    let c = cfg(&fx.frame);
    let sol = solve_scaling(&fx.frame, &c).unwrap();
    let mut ran = 0;
    for id in TheoremId::ALL {
        match run_check(id, &fx.frame, fx.decomposition.as_ref(), &sol, &c) {
            Ok(r) => {
                ran += 1;
                assert!(
                    r.verdict_consistent_with_solver,
                    "{what}: {} inconsistent with {:?}\n{:#?}\nnotes {:?}",
                    id.as_str(),
                    sol.status,
                    r.conditions,
                    r.notes
                );
            }
            Err(Error::MalformedDecomposition(_) | Error::NotRieszBasis | Error::WrongAmbientDimension { .. }) => {}
            Err(e) => panic!("{what}: {} failed: {e}", id.as_str()),
        }
    }
    ran
}

#[test]
fn theorem_reports_agree_with_solver_on_random_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1ab1e);
    let named = named_fixtures();
    let mut cases = 0;
    let mut reports = 0;
    for round in 0..600 {
        let fx = match round % 4 {
            0 => random_one_excess(&mut rng),
            1 => random_two_excess_h3(&mut rng),
            _ => {
                let base = &named[rng.random_range(0..named.len())];
                let n = base.frame.ambient_dim();
                let u = random_orthogonal(&mut rng, n);
                let m = if round % 4 == 2 {
                    u
                } else {
                    let g = gaussian_matrix(&mut rng, n, n).scale(rng.random_range(1e-3..0.3));
                    u.add(&g).unwrap()
                };
                match base.transformed(&m) {
                    Ok(fx) => fx,
                    Err(_) => continue,
                }
            }
        };
        let ran = assert_consistent(&fx, &format!("round {round}"));
        if ran > 0 {
            cases += 1;
            reports += ran;
        }
    }
    assert!(cases >= 500, "only {cases} decomposed cases produced reports");
    assert!(reports >= cases);
}

#[test]
fn named_fixtures_are_consistent() {
    for (i, fx) in named_fixtures().iter().enumerate() {
        assert!(assert_consistent(fx, &format!("fixture {i}")) > 0);
    }
}

#[test]
fn non_orthogonal_two_excess_in_h3_is_never_strict() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut seen = 0;
    while seen < 200 {
        let fx = random_two_excess_h3(&mut rng);
        let dec = fx.decomposition.as_ref().unwrap().resolve(&fx.frame, &cfg(&fx.frame));
        let Ok(dec) = dec else { continue };
        if dec.riesz_overlap() <= 1e-6 {
            continue;
        }
        seen += 1;
        let sol = solve_scaling(&fx.frame, &cfg(&fx.frame)).unwrap();
        assert!(!sol.status.is_strict());
    }
}

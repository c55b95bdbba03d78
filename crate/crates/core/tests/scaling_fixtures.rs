use approx::assert_abs_diff_eq;
use fusionscale::fixtures::{self, Fixture};
use fusionscale::scaling::*;
use fusionscale::{Error, FusionFrame, Subspace, ToleranceConfig};

fn cfg(f: &FusionFrame) -> ToleranceConfig {
    ToleranceConfig::for_dim(f.ambient_dim())
}

fn solve(fx: &Fixture) -> ScalingSolution {
    solve_scaling(&fx.frame, &cfg(&fx.frame)).unwrap()
}

fn check(id: TheoremId, fx: &Fixture) -> TheoremReport {
    let sol = solve(fx);
    run_check(id, &fx.frame, fx.decomposition.as_ref(), &sol, &cfg(&fx.frame)).unwrap()
}

fn assert_coefficients(sol: &ScalingSolution, expected: &[f64]) {
    assert_eq!(sol.coefficients.len(), expected.len());
    for (c, e) in sol.coefficients.iter().zip(expected) {
        assert_abs_diff_eq!(c, e, epsilon = 1e-8);
    }
}

#[test]
fn two_excess_h3_scales_by_halves() {
    let sol = solve(&fixtures::two_excess_h3().unwrap());
    assert_eq!(sol.status, ScalingStatus::StrictlyScalable);
    assert_coefficients(&sol, &[0.5, 0.5, 1.0]);
}

#[test]
fn two_excess_h4_scales_by_two_thirds() {
    let fx = fixtures::two_excess_h4().unwrap();
    let sol = solve(&fx);
    assert_eq!(sol.status, ScalingStatus::StrictlyScalable);
    assert_coefficients(&sol, &[2.0 / 3.0; 4]);
    let g = (2.0f64 / 3.0).sqrt();
    assert!(verify_scaling(&fx.frame, &[g; 4]).unwrap() <= 1e-12);
}

#[test]
fn remark_fixture_matches_closed_forms() {
    for alpha in [0.1, 0.3, 0.5, 0.7 * core::f64::consts::FRAC_1_SQRT_2] {
        let sol = solve(&fixtures::one_excess_alpha(alpha, 4).unwrap());
        assert_eq!(sol.status, ScalingStatus::StrictlyScalable);
        let c = fixtures::one_excess_alpha_coefficients(alpha);
        for (g, c) in sol.gamma.iter().zip(c) {
            assert_abs_diff_eq!(g.unwrap(), c.sqrt(), epsilon = 1e-8);
        }
    }
}

#[test]
fn riesz_u_boundary() {
    let sol = solve(&fixtures::riesz_u([1.0, 0.0, 0.0]).unwrap());
    assert!(sol.status.is_strict());
    let h = core::f64::consts::FRAC_1_SQRT_2;
    for u in [[h, h, 0.0], [0.8, 0.6, 0.0]] {
        let sol = solve(&fixtures::riesz_u(u).unwrap());
        assert_eq!(sol.status, ScalingStatus::Infeasible);
        assert!(sol.residual > 1e-6 && sol.nnls_residual > 1e-6);
    }
}

#[test]
fn verify_scaling_examples() {
    let f = fixtures::orthonormal(4).unwrap().frame;
    assert_eq!(verify_scaling(&f, &[1.0; 4]).unwrap(), 0.0);
    assert_abs_diff_eq!(verify_scaling(&f, &[2.0; 4]).unwrap(), 3.0 * 2.0, epsilon = 1e-12);
    assert!(matches!(verify_scaling(&f, &[1.0; 3]), Err(Error::LengthMismatch { .. })));
    assert!(matches!(verify_scaling(&f, &[1.0, 0.0, 1.0, 1.0]), Err(Error::NonpositiveGamma(_))));
}

#[test]
fn negative_fixtures_are_not_scalable() {
    for fx in [
        fixtures::shift_trunc(1).unwrap(),
        fixtures::shift_trunc(2).unwrap(),
        fixtures::shift_trunc(5).unwrap(),
        fixtures::big_h7([1.0; 7], 1.0).unwrap(),
        fixtures::one_subspace_h4().unwrap(),
    ] {
        let sol = solve(&fx);
        assert_eq!(sol.status, ScalingStatus::Infeasible);
        assert!(sol.nnls_residual > cfg(&fx.frame).residual_tol);
    }
    let sol = solve(&fixtures::nonscalable_h3().unwrap());
    assert_eq!(sol.status, ScalingStatus::ScalableWithZeroWeights);
    assert!(sol.min_coefficient < 1e-8);
}

#[test]
fn repeated_subspace_closed_form() {
    for n in [1usize, 2, 5] {
        let sol = solve(&fixtures::repeated_subspace(n, 0.0).unwrap());
        assert!(sol.status.is_strict());
        let target = 1.0 / ((n + 1) as f64).sqrt();
        let g = sol.gamma_or_zero();
        assert_abs_diff_eq!(g[0], target, epsilon = 1e-8);
        assert_abs_diff_eq!(g[1], 1.0, epsilon = 1e-8);
        for gi in &g[2..] {
            assert_abs_diff_eq!(*gi, target, epsilon = 1e-8);
        }
        let skew = solve(&fixtures::repeated_subspace(n, 0.4).unwrap());
        assert_eq!(skew.status, ScalingStatus::Infeasible);
    }
}

#[test]
fn tight2_h9_scales_uniformly() {
    let sol = solve(&fixtures::tight2_h9().unwrap());
    assert_eq!(sol.selection, Selection::TightShortcut);
    for g in sol.gamma_or_zero() {
        assert_abs_diff_eq!(g, core::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-8);
    }
}

#[test]
fn zdual_scalable_only_for_full_swap() {
    assert!(solve(&fixtures::zdual_trunc(2, 2, 2).unwrap()).status.is_strict());
    for (n, m, big) in [(2, 2, 4), (1, 2, 2), (2, 1, 2), (0, 1, 3)] {
        assert!(!solve(&fixtures::zdual_trunc(n, m, big).unwrap()).status.is_strict(), "{n} {m} {big}");
    }
}

#[test]
fn fixture_parameters_are_validated() {
    assert!(matches!(fixtures::one_excess_alpha(0.8, 4), Err(Error::ParameterOutOfRange(_))));
    assert!(matches!(fixtures::one_excess_alpha(0.5, 3), Err(Error::ParameterOutOfRange(_))));
    assert!(matches!(fixtures::shift_trunc(0), Err(Error::ParameterOutOfRange(_))));
    assert!(matches!(fixtures::zdual_trunc(3, 1, 2), Err(Error::ParameterOutOfRange(_))));
    assert!(matches!(fixtures::big_h7([1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0], 1.0), Err(Error::ParameterOutOfRange(_))));
    assert!(matches!(fixtures::riesz_u([0.0, 1.0, 0.0]), Err(Error::ParameterOutOfRange(_))));
}

#[test]
fn riesz_checker_examples() {
    let r = check(TheoremId::RieszScalable, &fixtures::orthonormal(3).unwrap());
    assert!(r.conditions.iter().all(|c| c.holds));
    assert_eq!(r.prediction, Prediction::Scalable);
    let r = check(TheoremId::RieszScalable, &fixtures::riesz_u([1.0, 0.0, 0.0]).unwrap());
    assert!(r.conditions.iter().all(|c| c.holds) && r.verdict_consistent_with_solver);

    let h = core::f64::consts::FRAC_1_SQRT_2;
    let skew = FusionFrame::unweighted(vec![
        Subspace::coordinate(2, &[0]).unwrap(),
        Subspace::from_vectors(&[vec![h, h]], 1e-10).unwrap(),
    ])
    .unwrap();
    let sol = solve_scaling(&skew, &cfg(&skew)).unwrap();
    let r = check_riesz_scalable(&skew, &sol, &cfg(&skew)).unwrap();
    let three = ["inverse weights scale the frame", "inverse frame operator acts as w_i^-2 on each subspace", "subspaces pairwise orthogonal"];
    assert!(three.iter().all(|n| !r.condition(n).unwrap().holds));
    assert!(r.condition("three formulations agree").unwrap().holds);
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert!(r.verdict_consistent_with_solver);

    let mb = fixtures::mercedes_benz().unwrap();
    let sol = solve(&mb);
    assert!(matches!(check_riesz_scalable(&mb.frame, &sol, &cfg(&mb.frame)), Err(Error::NotRieszBasis)));
}

#[test]
fn one_excess_conditions_on_remark_fixture() {
    let r = check(TheoremId::OneExcess, &fixtures::one_excess_alpha(0.5, 4).unwrap());
    assert!(r.necessary_hold(), "{:#?}", r.conditions);
    assert!(r.condition("excess identity").unwrap().holds);
    assert!(r.condition("x is an eigenvector of the scaled Riesz operator with eigenvalue 1 - c_0").unwrap().holds);
    assert!(r.verdict_consistent_with_solver);

    let r = check(TheoremId::OneExcess, &fixtures::shift_trunc(2).unwrap());
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert_eq!(r.solver_status, ScalingStatus::Infeasible);
    assert!(r.verdict_consistent_with_solver);
}

#[test]
fn h4_beta_follows_generated_subspace_rule() {
    let cases: [([f64; 4], f64, bool); 5] = [
        ([0.0, 0.0, 1.0, 0.0], 0.0, true),
        ([0.0, 0.0, 0.0, 1.0], 0.0, true),
        ([1.0, 0.0, 0.0, 0.0], 0.0, false),
        ([0.0, 0.0, 1.0, 1.0], 0.0, false),
        ([1.0, 0.0, 1.0, 0.0], 1.0, false),
    ];
    for (a, beta, scalable) in cases {
        let fx = fixtures::h4_beta(a, beta).unwrap();
        assert_eq!(solve(&fx).status.is_strict(), scalable, "a = {a:?}, beta = {beta}");
        for id in [TheoremId::OneExcess, TheoremId::OneExcessStructure] {
            let r = check(id, &fx);
            assert!(r.verdict_consistent_with_solver, "{} a = {a:?}", id.as_str());
            if beta == 0.0 {
                let want = if scalable { Prediction::Scalable } else { Prediction::NotScalable };
                assert_eq!(r.prediction, want, "{} a = {a:?}", id.as_str());
            }
        }
    }
    // beta != 0 with a_1 = a_2 = 0 is also ruled out.
    let fx = fixtures::h4_beta([0.0, 0.0, 1.0, 1.0], 0.5).unwrap();
    assert!(!solve(&fx).status.is_strict());
    assert_eq!(check(TheoremId::OneExcess, &fx).prediction, Prediction::NotScalable);
}

#[test]
fn one_excess_structure_examples() {
    let r = check(TheoremId::OneExcessStructure, &fixtures::one_excess_alpha(0.5, 4).unwrap());
    assert_eq!(r.prediction, Prediction::Scalable);
    assert!(r.conditions.iter().all(|c| c.holds));

    // Every Riesz subspace two-dimensional: a line cannot be carried.
    let f = FusionFrame::unweighted(vec![
        Subspace::from_vectors(&[vec![1.0, 0.0, 0.0, 1.0]], 1e-10).unwrap(),
        Subspace::coordinate(4, &[0, 1]).unwrap(),
        Subspace::coordinate(4, &[2, 3]).unwrap(),
    ])
    .unwrap();
    let dec = ExcessDecomposition { riesz: vec![1, 2], excess: vec![ExcessSpec::new(vec![1.0, 0.0, 0.0, 1.0], Some(0))] };
    let sol = solve_scaling(&f, &cfg(&f)).unwrap();
    let r = check_one_excess_structure(&f, &dec, &sol, &cfg(&f)).unwrap();
    assert!(!r.condition("dim W_j = 1 on the support").unwrap().holds);
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert!(r.verdict_consistent_with_solver);

    // Orthogonal Riesz part with V_0 = W_2 in H_3.
    let f = FusionFrame::unweighted(vec![
        Subspace::coordinate(3, &[1]).unwrap(),
        Subspace::coordinate(3, &[0]).unwrap(),
        Subspace::coordinate(3, &[1]).unwrap(),
        Subspace::coordinate(3, &[2]).unwrap(),
    ])
    .unwrap();
    let dec = ExcessDecomposition { riesz: vec![1, 2, 3], excess: vec![ExcessSpec::new(vec![0.0, 1.0, 0.0], Some(0))] };
    let sol = solve_scaling(&f, &cfg(&f)).unwrap();
    assert!(sol.status.is_strict());
    for r in [
        check_one_excess(&f, &dec, &sol, &cfg(&f)).unwrap(),
        check_one_excess_structure(&f, &dec, &sol, &cfg(&f)).unwrap(),
    ] {
        assert_eq!(r.prediction, Prediction::Scalable);
        assert!(r.verdict_consistent_with_solver);
    }
}

#[test]
fn two_excess_conditions_on_h4() {
    let r = check(TheoremId::TwoExcess, &fixtures::two_excess_h4().unwrap());
    assert!(r.necessary_hold(), "{:#?}", r.conditions);
    let sum = r.condition("c_1 + c_2 >= 1").unwrap().witness + 1.0;
    assert_abs_diff_eq!(sum, 4.0 / 3.0, epsilon = 1e-8);
    assert!(r.condition("|x_2|^2 |y_1|^2 = 1").unwrap().holds);
    assert!(r.condition("c_1 + c_2 < 2").unwrap().holds);
    assert!(r.verdict_consistent_with_solver);
}

#[test]
fn two_excess_negative_examples() {
    let r = check(TheoremId::TwoExcess, &fixtures::big_h7([1.0; 7], 1.0).unwrap());
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert_eq!(r.solver_status, ScalingStatus::Infeasible);
    assert!(r.verdict_consistent_with_solver);

    let fx = fixtures::nonscalable_h3().unwrap();
    let r = check(TheoremId::TwoExcess, &fx);
    assert!(r.condition("one excess vector lives on the two hosts while the other does not").unwrap().holds);
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert!(r.verdict_consistent_with_solver);
    let r = check(TheoremId::TwoExcessH3, &fx);
    assert!(r.condition("Riesz part orthogonal").unwrap().holds);
    assert!(!r.solver_status.is_strict());
    assert!(r.verdict_consistent_with_solver);
}

#[test]
fn two_excess_h3_examples() {
    let fx = fixtures::two_excess_h3().unwrap();
    let r = check(TheoremId::TwoExcessH3, &fx);
    assert!(r.solver_status.is_strict() && r.necessary_hold() && r.verdict_consistent_with_solver);
    let r = check(TheoremId::TwoExcess, &fx);
    assert_eq!(r.prediction, Prediction::Scalable);
    let h4 = fixtures::two_excess_h4().unwrap();
    let sol = solve(&h4);
    assert!(matches!(
        check_two_excess_h3_orthogonality(&h4.frame, h4.decomposition.as_ref().unwrap(), &sol, &cfg(&h4.frame)),
        Err(Error::WrongAmbientDimension { expected: 3, found: 4 })
    ));
}

#[test]
fn k_excess_examples() {
    let r = check(TheoremId::KExcess, &fixtures::repeated_subspace(2, 0.0).unwrap());
    assert_eq!(r.prediction, Prediction::Scalable);
    assert!(r.condition("repeated-subspace equivalence").unwrap().holds);
    let r = check(TheoremId::KExcess, &fixtures::repeated_subspace(2, 0.3).unwrap());
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert!(r.condition("repeated-subspace equivalence").unwrap().holds);
    let r = check(TheoremId::KExcess, &fixtures::one_subspace_h4().unwrap());
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert_eq!(r.solver_status, ScalingStatus::Infeasible);
    let r = check(TheoremId::KExcess, &fixtures::ortho_excess_h3().unwrap());
    assert_eq!(r.prediction, Prediction::Scalable);
    assert!(r.solver_status.is_strict() && r.verdict_consistent_with_solver);
    assert!(r.condition("excess identity").unwrap().holds);
}

#[test]
fn swap_structure_examples() {
    let r = check(TheoremId::SwapStructure, &fixtures::zdual_trunc(2, 2, 2).unwrap());
    assert_eq!(r.prediction, Prediction::Scalable);
    assert!(r.necessary_hold() && r.verdict_consistent_with_solver);
    assert!(r.condition("c_1 + c_2 = 1").unwrap().holds);

    // Dropping one basis vector from the swap: Z_1 is a proper subspace of W_1.
    let r = check(TheoremId::SwapStructure, &fixtures::zdual_trunc(2, 1, 2).unwrap());
    assert!(!r.condition("Z_1 = W_1").unwrap().holds);
    assert_eq!(r.prediction, Prediction::NotScalable);
    assert!(r.verdict_consistent_with_solver);

    let r = check(TheoremId::SwapStructure, &fixtures::tight2_h9().unwrap());
    assert!(r.solver_status.is_strict() && r.necessary_hold() && r.verdict_consistent_with_solver);
    assert!(r.condition("dim W_1 <= dim V_2 - dim W_2").unwrap().holds);
}

#[test]
fn malformed_decompositions_are_rejected() {
    let fx = fixtures::two_excess_h3().unwrap();
    let sol = solve(&fx);
    let c = cfg(&fx.frame);
    let dec = fx.decomposition.as_ref().unwrap();
    assert!(matches!(check_one_excess(&fx.frame, dec, &sol, &c), Err(Error::MalformedDecomposition(_))));
    assert!(matches!(
        run_check(TheoremId::TwoExcess, &fx.frame, None, &sol, &c),
        Err(Error::MalformedDecomposition(_))
    ));
    let bad = ExcessDecomposition { riesz: vec![0, 0, 2], excess: dec.excess.clone() };
    assert!(matches!(check_two_excess(&fx.frame, &bad, &sol, &c), Err(Error::MalformedDecomposition(_))));
    let one = fixtures::one_excess_alpha(0.5, 4).unwrap();
    let sol = solve(&one);
    assert!(matches!(
        check_swap_structure(&one.frame, one.decomposition.as_ref().unwrap(), &sol, &cfg(&one.frame)),
        Err(Error::MalformedDecomposition(_))
    ));
    let short = ScalingSolution { coefficients: vec![1.0], ..sol };
    assert!(check_one_excess(&one.frame, one.decomposition.as_ref().unwrap(), &short, &cfg(&one.frame)).is_err());
}

#[test]
fn theorem_ids_round_trip() {
    for id in TheoremId::ALL {
        assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
    }
    assert!("cor-3.7".parse::<TheoremId>().is_err());
}

#[test]
fn weighted_frames_use_coefficients() {
    let fx = fixtures::two_excess_h3().unwrap();
    let f = fx.frame.with_weights(&[2.0, 0.5, 3.0]).unwrap();
    let sol = solve_scaling(&f, &cfg(&f)).unwrap();
    assert_coefficients(&sol, &[0.5, 0.5, 1.0]);
    let g = sol.gamma_or_zero();
    assert_abs_diff_eq!(g[0], 0.5f64.sqrt() / 2.0, epsilon = 1e-12);
}

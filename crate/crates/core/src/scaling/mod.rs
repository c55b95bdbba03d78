//! Weight-scalability: the convex solver, excess decompositions and the
//! structural checkers built on them.

mod checks;
mod decomposition;
mod report;
mod solver;

pub use checks::{
    check_k_excess, check_one_excess, check_one_excess_structure, check_riesz_scalable, check_swap_structure,
    check_two_excess, check_two_excess_h3_orthogonality, run_check, TheoremId,
};
pub use decomposition::{Carrier, ExcessDecomposition, ExcessSpec, ResolvedDecomposition, ResolvedExcess};
pub use report::{Condition, ConditionRole, Prediction, TheoremReport};
pub use solver::{
    coefficient_residual, projector_system, solve_scaling, solve_scaling_general, verify_scaling, ScalingSolution,
    ScalingStatus, Selection,
};

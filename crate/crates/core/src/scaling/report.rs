use alloc::string::String;
use alloc::vec::Vec;

use super::solver::ScalingStatus;

/// What a condition means for the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ConditionRole {
    /// Must hold whenever the frame is strictly scalable.
    Necessary,
    /// Structural hypothesis of a result; informs the prediction only.
    Hypothesis,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    /// Residual or inequality slack backing `holds`.
    pub witness: f64,
    pub role: ConditionRole,
}

/// Verdict implied by the structural conditions alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Prediction {
    Scalable,
    NotScalable,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TheoremReport {
    pub theorem_id: String,
    pub conditions: Vec<Condition>,
    pub prediction: Prediction,
    pub solver_status: ScalingStatus,
    pub verdict_consistent_with_solver: bool,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub(crate) fn new(theorem_id: &str, solver_status: ScalingStatus) -> Self {
        Self {
            theorem_id: String::from(theorem_id),
            conditions: Vec::new(),
            prediction: Prediction::Undetermined,
            solver_status,
            verdict_consistent_with_solver: true,
            notes: Vec::new(),
        }
    }

    /// Records a residual-type condition: holds when `residual <= tol`.
    pub(crate) fn residual(&mut self, name: impl Into<String>, residual: f64, tol: f64, role: ConditionRole) -> bool {
        self.push(name, residual <= tol, residual, role)
    }

    pub(crate) fn push(&mut self, name: impl Into<String>, holds: bool, witness: f64, role: ConditionRole) -> bool {
        self.conditions.push(Condition { name: name.into(), holds, witness, role });
        holds
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Whether every necessary condition holds.
    pub fn necessary_hold(&self) -> bool {
        self.conditions.iter().filter(|c| c.role == ConditionRole::Necessary).all(|c| c.holds)
    }

    /// Sets the prediction and compares it with the solver.
    pub(crate) fn conclude(&mut self, prediction: Prediction) {
        self.prediction = prediction;
        let strict = self.solver_status.is_strict();
        self.verdict_consistent_with_solver = match prediction {
            Prediction::Scalable => strict,
            Prediction::NotScalable => !strict,
            Prediction::Undetermined => true,
        } && (!strict || self.necessary_hold());
    }
}

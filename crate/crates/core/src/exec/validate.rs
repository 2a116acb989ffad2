use std::fmt::Write;

use crate::grounder::mangle;
use crate::model::{GroundAction, GroundTask, Name, Plan, State};

use super::{apply_action, ExecError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFailure {
    /// Zero-based position in the plan.
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub steps: usize,
    pub failing_step: Option<StepFailure>,
    /// Goal propositions missing from the final state.
    pub unmet_goal: Vec<Name>,
    pub final_state: State,
}

impl ValidationReport {
    /// Stable text form; step numbers in the output start at 1.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "valid: {}", if self.valid { "yes" } else { "no" }).unwrap();
        writeln!(out, "steps: {}", self.steps).unwrap();
        if let Some(f) = &self.failing_step {
            writeln!(out, "failing-step: {} ({})", f.index + 1, f.reason).unwrap();
        } else if !self.unmet_goal.is_empty() {
            let missing: Vec<&str> = self.unmet_goal.iter().map(Name::as_str).collect();
            writeln!(out, "goal: unmet (missing {})", missing.join(" ")).unwrap();
        }
        out
    }
}

/// Resolves a plan step to a ground action. A step `(name a b)` denotes
/// the action whose mangled name is `name_a_b`, so both lifted and ground
/// spellings work.
pub fn resolve<'t>(task: &'t GroundTask, plan: &Plan) -> Result<Vec<&'t GroundAction>, ExecError> {
    plan.steps
        .iter()
        .enumerate()
        .map(|(index, step)| {
            let key = mangle(&step.name, &step.args);
            task.action(key.as_str())
                .ok_or_else(|| ExecError::UnknownAction { index, step: step.to_string() })
        })
        .collect()
}

pub fn validate_plan(task: &GroundTask, plan: &Plan) -> Result<ValidationReport, ExecError> {
    let actions = resolve(task, plan)?;
    let mut state = task.init.clone();
    for (index, action) in actions.into_iter().enumerate() {
        match apply_action(&state, action) {
            Ok(next) => state = next,
            Err(e) => {
                return Ok(ValidationReport {
                    valid: false,
                    steps: plan.len(),
                    failing_step: Some(StepFailure { index, reason: e.to_string() }),
                    unmet_goal: Vec::new(),
                    final_state: state,
                })
            }
        }
    }
    let unmet_goal: Vec<Name> = task.goal.difference(&state.true_props).cloned().collect();
    Ok(ValidationReport {
        valid: unmet_goal.is_empty(),
        steps: plan.len(),
        failing_step: None,
        unmet_goal,
        final_state: state,
    })
}

//! Executing, validating, searching and translating plans.

mod apply;
mod random;
mod search;
mod translate;
mod validate;

use thiserror::Error;

use crate::model::Name;

pub use apply::apply_action;
pub use random::random_task;
pub use search::{bfs_plan, reachable_states, BfsOutcome, BfsResult, IndexedTask, LimitReached, Reachable};
pub use translate::{translate_plan_back, translate_plan_forward, TranslateError};
pub use validate::{resolve, validate_plan, StepFailure, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExecError {
    #[error("precondition of `{action}` not satisfied: missing {}", join(missing))]
    Precondition { action: Name, missing: Vec<Name> },
    #[error("step {}: unknown action `{step}`", index + 1)]
    UnknownAction { index: usize, step: String },
}

fn join(names: &[Name]) -> String {
    names.iter().map(Name::as_str).collect::<Vec<_>>().join(" ")
}

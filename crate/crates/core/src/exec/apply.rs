use crate::model::{GroundAction, State};

use super::ExecError;

/// Delete-before-add: `(s \ del) ∪ add`, so an atom both deleted and
/// added stays true.
pub fn apply_action(state: &State, action: &GroundAction) -> Result<State, ExecError> {
    let missing: Vec<_> = action.pre.difference(&state.true_props).cloned().collect();
    if !missing.is_empty() {
        return Err(ExecError::Precondition { action: action.name.clone(), missing });
    }
    let mut next: std::collections::BTreeSet<_> =
        state.true_props.difference(&action.del).cloned().collect();
    next.extend(action.add.iter().cloned());
    Ok(State { true_props: next })
}

use thiserror::Error;

use crate::encoders::{chain_micro_steps, APPLY};
use crate::grounder::mangle;
use crate::model::{Encoding, Manifest, Name, Plan, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("step {}: `{step}` is not an action of the original task", index + 1)]
    UnknownAction { index: usize, step: String },
    #[error("step {}: `{step}` does not correspond to any original action", index + 1)]
    UnknownTuple { index: usize, step: String },
    #[error("step {}: {message}", index + 1)]
    BadSegment { index: usize, message: String },
}

fn apply_args(index: usize, step: &Step) -> Result<&[Name], TranslateError> {
    if step.name.as_str() != APPLY {
        return Err(TranslateError::UnknownTuple { index, step: step.to_string() });
    }
    Ok(&step.args)
}

/// Maps a plan for the compiled instance to a plan for the original task.
/// Compiled steps use lifted spelling, `(apply x y)`; results are bare
/// original action names.
pub fn translate_plan_back(manifest: &Manifest, plan: &Plan) -> Result<Plan, TranslateError> {
    let by_tuple = manifest.actions_by_tuple();
    let original = |index: usize, tuple: &[Name], step: &Step| {
        by_tuple
            .get(tuple)
            .map(|origs| Step::bare(origs[0].clone()))
            .ok_or_else(|| TranslateError::UnknownTuple { index, step: step.to_string() })
    };
    let mut out = Vec::new();
    match manifest.encoding {
        Encoding::Adl | Encoding::Param | Encoding::Tm211 => {
            for (index, step) in plan.steps.iter().enumerate() {
                out.push(original(index, apply_args(index, step)?, step)?);
            }
        }
        Encoding::Chain => {
            let mut index = 0;
            while index < plan.steps.len() {
                let step = &plan.steps[index];
                let Some(obj) = step.args.first() else {
                    return Err(TranslateError::BadSegment {
                        index,
                        message: format!("`{step}` has no action argument"),
                    });
                };
                let orig = original(index, std::slice::from_ref(obj), step)?;
                let order = &manifest.chain_order[&orig.name];
                let expected = chain_micro_steps(obj, order);
                let end = index + expected.len();
                if end > plan.steps.len() || plan.steps[index..end] != expected[..] {
                    return Err(TranslateError::BadSegment {
                        index,
                        message: format!(
                            "expected the {} micro steps of `{}` starting with {}",
                            expected.len(),
                            orig.name,
                            expected[0]
                        ),
                    });
                }
                out.push(orig);
                index = end;
            }
        }
    }
    Ok(Plan::new(out))
}

/// Maps a plan for the original task to the compiled instance.
pub fn translate_plan_forward(manifest: &Manifest, plan: &Plan) -> Result<Plan, TranslateError> {
    let mut out = Vec::new();
    let apply = Name::lit(APPLY);
    for (index, step) in plan.steps.iter().enumerate() {
        let key = mangle(&step.name, &step.args);
        let tuple = manifest
            .action_map
            .get(&key)
            .ok_or_else(|| TranslateError::UnknownAction { index, step: step.to_string() })?;
        match manifest.encoding {
            Encoding::Chain => out.extend(chain_micro_steps(&tuple[0], &manifest.chain_order[&key])),
            _ => out.push(Step::new(apply.clone(), tuple.clone())),
        }
    }
    Ok(Plan::new(out))
}

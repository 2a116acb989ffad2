//! Differential check: a task and each of its compilations must agree on
//! plan existence, and compiled plans must translate back to valid ones.

use rayon::prelude::*;

use crate::encoders::{compile, CompiledInstance};
use crate::exec::{
    bfs_plan, random_task, translate_plan_back, translate_plan_forward, validate_plan, BfsOutcome,
};
use crate::grounder::{ground, mangle, SourceMap};
use crate::model::{Encoding, GroundTask, Plan};
use crate::parser::{parse_domain, parse_problem};

pub const ENCODINGS: [Encoding; 3] = [Encoding::Adl, Encoding::Chain, Encoding::Param];

/// Prints, re-parses and re-grounds a compiled instance.
pub fn reground(c: &CompiledInstance) -> Result<(GroundTask, SourceMap), String> {
    let d = parse_domain(&c.domain_text()).map_err(|e| format!("domain: {e}"))?;
    let p = parse_problem(&c.problem_text()).map_err(|e| format!("problem: {e}"))?;
    ground(&d, &p).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub seed: u64,
    pub encoding: Encoding,
    pub message: String,
    pub task: GroundTask,
}

fn exists(outcome: &BfsOutcome) -> Option<bool> {
    match outcome {
        BfsOutcome::Plan(_) => Some(true),
        BfsOutcome::NoPlan => Some(false),
        BfsOutcome::ResourceLimit => None,
    }
}

/// One task compiled, printed, re-parsed and re-ground.
#[derive(Debug, Clone)]
pub struct EncodingCheck {
    pub instance: CompiledInstance,
    pub compiled: GroundTask,
    pub sources: SourceMap,
    /// Shortest compiled plan in lifted `(schema args)` form.
    pub plan: Option<Plan>,
    /// States stored by the compiled search.
    pub states: usize,
}

/// Compares `t` against one encoding: plan existence must agree and a
/// compiled plan must translate back to a valid plan for `t`.
pub fn check_encoding(t: &GroundTask, encoding: Encoding, max_states: usize) -> Result<EncodingCheck, String> {
    let original = exists(&bfs_plan(t, max_states).outcome).ok_or("original search hit the state limit")?;
    let instance = compile(t, encoding, None).map_err(|e| e.to_string())?;
    let (compiled, sources) = reground(&instance)?;
    let result = bfs_plan(&compiled, max_states);
    let found = exists(&result.outcome).ok_or("compiled search hit the state limit")?;
    if found != original {
        return Err(format!("plan exists: original {original}, compiled {found}"));
    }
    let plan = result.plan().map(|p| sources.lift_plan(p));
    if let Some(lifted) = &plan {
        let back = translate_plan_back(&instance.manifest, lifted).map_err(|e| e.to_string())?;
        let report = validate_plan(t, &back).map_err(|e| e.to_string())?;
        if !report.valid {
            return Err(format!("back-translated plan is invalid:\n{}", report.render()));
        }
    }
    Ok(EncodingCheck { instance, compiled, sources, plan, states: result.states })
}

fn validates(t: &GroundTask, plan: &Plan, what: &str) -> Result<(), String> {
    let report = validate_plan(t, plan).map_err(|e| format!("{what}: {e}"))?;
    if report.valid {
        Ok(())
    } else {
        Err(format!("{what} is invalid: {}", report.render().replace('\n', "; ")))
    }
}

/// Laws for a valid compiled plan `p`: `back(p)` is valid on the original,
/// `forward(back(p)) == p`, and that plan is valid on the compiled task.
pub fn check_compiled_round_trip(original: &GroundTask, check: &EncodingCheck, p: &Plan) -> Result<(), String> {
    let m = &check.instance.manifest;
    validates(&check.compiled, p, "compiled plan")?;
    let back = translate_plan_back(m, p).map_err(|e| e.to_string())?;
    validates(original, &back, "back-translated plan")?;
    let again = translate_plan_forward(m, &back).map_err(|e| e.to_string())?;
    if &again != p {
        return Err("forward(back(plan)) differs from plan".into());
    }
    validates(&check.compiled, &again, "forward plan")
}

/// Laws for a valid original plan `p`: `forward(p)` is valid on the
/// compiled task and `back(forward(p))` equals `p` up to actions with
/// identical pre/add/del sets, which the param encoding merges.
pub fn check_original_round_trip(original: &GroundTask, check: &EncodingCheck, p: &Plan) -> Result<(), String> {
    let m = &check.instance.manifest;
    validates(original, p, "original plan")?;
    let forward = translate_plan_forward(m, p).map_err(|e| e.to_string())?;
    validates(&check.compiled, &forward, "forward plan")?;
    let back = translate_plan_back(m, &forward).map_err(|e| e.to_string())?;
    let same = back.len() == p.len()
        && back.steps.iter().zip(&p.steps).all(|(x, y)| {
            let find = |s: &crate::model::Step| original.action(mangle(&s.name, &s.args).as_str());
            match (find(x), find(y)) {
                (Some(a), Some(b)) => a.pre == b.pre && a.add == b.add && a.del == b.del,
                _ => false,
            }
        });
    if same {
        Ok(())
    } else {
        Err("back(forward(plan)) differs from plan".into())
    }
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub tasks: usize,
    /// Tasks whose original has a plan.
    pub solvable: usize,
    pub discrepancies: Vec<Discrepancy>,
}

/// Task `i` uses seed `seed + i`, with between 1 and 12 actions.
pub fn fuzz_task(seed: u64, n_props: usize) -> GroundTask {
    let n_actions = 1 + (seed % 12) as usize;
    random_task(seed, n_props, n_actions, 0.25)
}

pub fn fuzz(seed: u64, iters: usize, n_props: usize, max_states: usize) -> FuzzReport {
    let results: Vec<(bool, Vec<Discrepancy>)> = (0..iters as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let t = fuzz_task(s, n_props);
            let solvable = bfs_plan(&t, max_states).plan().is_some();
            let bad = ENCODINGS
                .iter()
                .filter_map(|&encoding| {
                    check_encoding(&t, encoding, max_states).err().map(|message| Discrepancy {
                        seed: s,
                        encoding,
                        message,
                        task: t.clone(),
                    })
                })
                .collect();
            (solvable, bad)
        })
        .collect();
    let mut report = FuzzReport { tasks: iters, ..Default::default() };
    for (solvable, bad) in results {
        report.solvable += solvable as usize;
        report.discrepancies.extend(bad);
    }
    report
}

use std::collections::BTreeSet;

use crate::model::{Bounds, Encoding, GroundAction, GroundTask, Name, State, TMachine};

use super::{encode_param, CompiledInstance, EncodeError};

/// Every action produced by [`encode_tm`] fits these bounds.
pub const TM_BOUNDS: Bounds = Bounds { p: 2, a: 1, d: 1 };

fn head(i: usize, q: &impl std::fmt::Display) -> Name {
    Name::lit(&format!("h_{i}_{q}"))
}

fn cell(i: usize, s: &impl std::fmt::Display) -> Name {
    Name::lit(&format!("t_{i}_{s}"))
}

/// A bounded-tape machine as a STRIPS task whose goal `accepted` is
/// reachable iff the machine accepts. Each transition at each cell is
/// split into three actions so none needs more than two preconditions
/// and one add and one delete.
pub fn encode_tm(m: &TMachine) -> Result<GroundTask, EncodeError> {
    let v = m.check();
    if !v.is_empty() {
        return Err(EncodeError::InvalidMachine(v));
    }
    let accepted = Name::lit("accepted");
    let mut props = BTreeSet::new();
    let mut actions = Vec::new();
    for i in 1..=m.tape_len {
        props.extend(m.states.iter().map(|q| head(i, q)));
        props.extend(m.alphabet.iter().map(|s| cell(i, s)));
        for ((q, s), tr) in &m.transitions {
            let Some(j) = tr.dir.target(i, m.tape_len) else { continue };
            let tag = format!("{i}_{q}_{s}");
            let mid = Name::lit(&format!("mid_{tag}"));
            props.insert(mid.clone());
            let act = |k: u8, pre: Vec<Name>, add: Name, del: Name| {
                GroundAction::new(Name::lit(&format!("step{k}_{tag}")), pre, [add], [del])
            };
            actions.push(act(1, vec![head(i, q), cell(i, s)], mid.clone(), head(i, q)));
            actions.push(act(2, vec![mid.clone()], cell(i, &tr.write), cell(i, s)));
            actions.push(act(3, vec![mid.clone(), cell(i, &tr.write)], head(j, &tr.next), mid.clone()));
        }
        actions.push(GroundAction::new(
            Name::lit(&format!("accept_{i}")),
            [head(i, &m.accept)],
            [accepted.clone()],
            [],
        ));
    }
    props.insert(accepted.clone());
    let mut init = vec![head(1, &m.start)];
    init.extend(m.initial_tape().iter().enumerate().map(|(k, s)| cell(k + 1, s)));
    let task = GroundTask { props, actions, init: State::new(init), goal: [accepted].into() };
    Ok(crate::model::canonicalize(task).expect("machine action names are distinct"))
}

/// [`encode_tm`] followed by the param encoding at [`TM_BOUNDS`].
pub fn compile_tm(m: &TMachine) -> Result<CompiledInstance, EncodeError> {
    let mut c = encode_param(&encode_tm(m)?, Some(TM_BOUNDS))?;
    c.manifest.encoding = Encoding::Tm211;
    Ok(c)
}

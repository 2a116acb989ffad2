use std::collections::BTreeSet;

use crate::model::{
    ActionSchema, Bounds, Condition, Domain, Effect, Encoding, GroundTask, Manifest, Name,
    PredicateDecl, Problem, OBJECT_TYPE,
};

use super::{
    atom, check_task, fact, n, problem_name, typed, CompiledInstance, EncodeError, APPLY, PAD_FALSE,
    PAD_TRUE,
};

/// Largest pre/add/del sizes, with `p` and `a` at least 1.
pub fn infer_bounds(t: &GroundTask) -> Bounds {
    let max = |f: fn(&crate::model::GroundAction) -> usize| t.actions.iter().map(f).max().unwrap_or(0);
    Bounds::new(max(|a| a.pre.len()).max(1), max(|a| a.add.len()).max(1), max(|a| a.del.len()))
}

fn slot_vars(b: Bounds) -> Vec<String> {
    let mut v: Vec<String> = (1..=b.p).map(|i| format!("pre{i}")).collect();
    v.extend((1..=b.a).map(|i| format!("add{i}")));
    v.extend((1..=b.d).map(|i| format!("del{i}")));
    v
}

/// The untyped one-schema domain whose `ground-action` facts each
/// describe one ground action with `b.p` pre, `b.a` add and `b.d` del slots.
pub fn param_domain(b: Bounds) -> Domain {
    let vars = slot_vars(b);
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let params: Vec<_> = refs.iter().map(|v| typed(v, OBJECT_TYPE)).collect();
    let (pre, rest) = refs.split_at(b.p);
    let (add, del) = rest.split_at(b.a);
    let mut precondition = vec![Condition::Atom(atom("ground-action", &refs))];
    precondition.extend(pre.iter().map(|v| Condition::Atom(atom("true", &[v]))));
    let mut effect: Vec<Effect> = add.iter().map(|v| Effect::Add(atom("true", &[v]))).collect();
    effect.extend(del.iter().map(|v| Effect::Del(atom("true", &[v]))));
    Domain {
        name: n(&format!("parameterised-strips-planning-{}-{}-{}", b.p, b.a, b.d)),
        requirements: Vec::new(),
        types: Vec::new(),
        predicates: vec![
            PredicateDecl { name: n("ground-action"), params: params.clone() },
            PredicateDecl { name: n("true"), params: vec![typed("p", OBJECT_TYPE)] },
        ],
        schemata: vec![ActionSchema {
            name: n(APPLY),
            params,
            precondition: Condition::And(precondition),
            effect: Effect::And(effect),
        }],
    }
}

fn padded(set: &BTreeSet<Name>, len: usize, pad: &Name) -> impl Iterator<Item = Name> {
    let fill = len - set.len();
    set.iter().cloned().chain(std::iter::repeat_n(pad.clone(), fill)).collect::<Vec<_>>().into_iter()
}

pub fn encode_param(t: &GroundTask, bounds: Option<Bounds>) -> Result<CompiledInstance, EncodeError> {
    check_task(t)?;
    let needed = infer_bounds(t);
    let b = bounds.unwrap_or(needed);
    let v = b.check();
    if !v.is_empty() {
        return Err(EncodeError::InvalidBounds(v));
    }
    if !needed.fits_within(&b) {
        return Err(EncodeError::BoundsTooSmall { given: b, needed });
    }
    let (pad_t, pad_f) = (n(PAD_TRUE), n(PAD_FALSE));
    let mut objects: Vec<_> = t.props.iter().map(|p| (p.clone(), n(OBJECT_TYPE))).collect();
    objects.push((pad_t.clone(), n(OBJECT_TYPE)));
    let mut manifest = Manifest::new(Encoding::Param);
    manifest.pads.push(pad_t.clone());
    if b.d > 0 {
        objects.push((pad_f.clone(), n(OBJECT_TYPE)));
        manifest.pads.push(pad_f.clone());
    }
    let mut init = BTreeSet::new();
    for a in &t.actions {
        let tuple: Vec<Name> = padded(&a.pre, b.p, &pad_t)
            .chain(padded(&a.add, b.a, &pad_t))
            .chain(padded(&a.del, b.d, &pad_f))
            .collect();
        init.insert(fact("ground-action", &tuple.iter().collect::<Vec<_>>()));
        manifest.action_map.insert(a.name.clone(), tuple);
    }
    init.insert(fact("true", &[&pad_t]));
    init.extend(t.init.true_props.iter().map(|p| fact("true", &[p])));
    for p in &t.props {
        manifest.prop_map.insert(p.clone(), p.clone());
    }
    manifest.bounds = Some(b);
    let domain = param_domain(b);
    let problem = Problem {
        name: problem_name(),
        domain_name: domain.name.clone(),
        objects,
        init,
        goal: t.goal.iter().map(|g| fact("true", &[g])).collect(),
    };
    Ok(CompiledInstance { domain, problem, manifest })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GroundAction, State};

    fn nm(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn one_action() -> GroundTask {
        GroundTask {
            props: [nm("p"), nm("q")].into(),
            actions: vec![GroundAction::new(nm("a"), [nm("p")], [nm("q")], [])],
            init: State::new([nm("p")]),
            goal: [nm("q")].into(),
        }
    }

    #[test]
    fn bounds_floors() {
        assert_eq!(infer_bounds(&GroundTask::default()), Bounds::new(1, 1, 0));
        assert_eq!(infer_bounds(&one_action()), Bounds::new(1, 1, 0));
    }

    #[test]
    fn padding_fills_slots() {
        let c = encode_param(&one_action(), Some(Bounds::new(3, 2, 1))).unwrap();
        let tuple: Vec<Name> = ["p", "updpad-t", "updpad-t", "q", "updpad-t", "updpad-f"].map(nm).into();
        let ga = fact("ground-action", &tuple.iter().collect::<Vec<_>>());
        let expected: BTreeSet<_> = [ga, fact("true", &[&nm("updpad-t")]), fact("true", &[&nm("p")])].into();
        assert_eq!(c.problem.init, expected);
        assert_eq!(c.manifest.action_map[&nm("a")], tuple);
    }

    #[test]
    fn rejects_small_bounds() {
        let mut t = one_action();
        t.actions[0].pre.insert(nm("q"));
        assert!(matches!(
            encode_param(&t, Some(Bounds::new(1, 1, 0))),
            Err(EncodeError::BoundsTooSmall { .. })
        ));
    }

    #[test]
    fn identical_actions_share_a_fact() {
        let mut t = one_action();
        let mut twin = t.actions[0].clone();
        twin.name = nm("b");
        t.actions.push(twin);
        let c = encode_param(&t, None).unwrap();
        assert_eq!(c.problem.init.len(), 3);
        assert_eq!(c.manifest.action_map.len(), 2);
        let by_tuple = c.manifest.actions_by_tuple();
        assert_eq!(by_tuple.values().next().unwrap()[0].as_str(), "a");
    }

    #[test]
    fn reserved_prefix() {
        let mut t = one_action();
        t.props.insert(nm("updpad-t"));
        assert_eq!(encode_param(&t, None).unwrap_err(), EncodeError::Reserved(nm("updpad-t")));
    }
}

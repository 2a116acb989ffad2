use std::collections::BTreeSet;

use crate::model::{
    ActionSchema, Condition, Domain, Effect, Encoding, GroundTask, Manifest, PredicateDecl, Problem,
};

use super::{
    atom, check_disjoint, check_task, fact, n, problem_name, typed, CompiledInstance, EncodeError,
    ACTION_TYPE, APPLY, PROPOSITION_TYPE,
};

/// One `apply` schema with universally quantified conditional effects.
pub fn universal_adl_domain() -> Domain {
    let binary = |name: &str| PredicateDecl {
        name: n(name),
        params: vec![typed("a", ACTION_TYPE), typed("p", PROPOSITION_TYPE)],
    };
    let p = || typed("p", PROPOSITION_TYPE);
    let holds = |pred: &str| Condition::Atom(atom(pred, &["a", "p"]));
    let apply = ActionSchema {
        name: n(APPLY),
        params: vec![typed("a", ACTION_TYPE)],
        precondition: Condition::Forall(
            p(),
            Box::new(Condition::Imply(Box::new(holds("pre")), Box::new(Condition::Atom(atom("true", &["p"]))))),
        ),
        effect: Effect::And(vec![
            Effect::Forall(
                p(),
                Box::new(Effect::When(holds("add"), Box::new(Effect::Add(atom("true", &["p"]))))),
            ),
            Effect::Forall(
                p(),
                Box::new(Effect::When(
                    Condition::And(vec![holds("del"), Condition::Not(Box::new(holds("add")))]),
                    Box::new(Effect::Del(atom("true", &["p"]))),
                )),
            ),
        ]),
    };
    Domain {
        name: n("planning"),
        requirements: Vec::new(),
        types: vec![n(ACTION_TYPE), n(PROPOSITION_TYPE)],
        predicates: vec![
            binary("pre"),
            binary("add"),
            binary("del"),
            PredicateDecl { name: n("true"), params: vec![typed("p", PROPOSITION_TYPE)] },
        ],
        schemata: vec![apply],
    }
}

pub fn encode_adl(t: &GroundTask) -> Result<CompiledInstance, EncodeError> {
    check_task(t)?;
    check_disjoint(t)?;
    let mut objects: Vec<_> = t.props.iter().map(|p| (p.clone(), n(PROPOSITION_TYPE))).collect();
    objects.extend(t.actions.iter().map(|a| (a.name.clone(), n(ACTION_TYPE))));
    let mut init = BTreeSet::new();
    let mut manifest = Manifest::new(Encoding::Adl);
    for a in &t.actions {
        for (pred, set) in [("pre", &a.pre), ("add", &a.add), ("del", &a.del)] {
            init.extend(set.iter().map(|p| fact(pred, &[&a.name, p])));
        }
        manifest.action_map.insert(a.name.clone(), vec![a.name.clone()]);
    }
    init.extend(t.init.true_props.iter().map(|p| fact("true", &[p])));
    for p in &t.props {
        manifest.prop_map.insert(p.clone(), p.clone());
    }
    let domain = universal_adl_domain();
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
    use crate::model::{GroundAction, Name, State};
    use crate::parser::print_problem;

    fn nm(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    #[test]
    fn empty_task() {
        let c = encode_adl(&GroundTask::default()).unwrap();
        assert!(c.problem.objects.is_empty());
        assert!(c.problem.init.is_empty());
        assert!(print_problem(&c.problem).contains("(:goal (and))"));
    }

    #[test]
    fn one_action() {
        let t = GroundTask {
            props: [nm("p"), nm("q")].into(),
            actions: vec![GroundAction::new(nm("a"), [nm("p")], [nm("q")], [])],
            init: State::new([nm("p")]),
            goal: [nm("q")].into(),
        };
        let c = encode_adl(&t).unwrap();
        let a = nm("a");
        let (p, q) = (nm("p"), nm("q"));
        let expected: BTreeSet<_> =
            [fact("pre", &[&a, &p]), fact("add", &[&a, &q]), fact("true", &[&p])].into();
        assert_eq!(c.problem.init, expected);
        assert_eq!(c.problem.goal, vec![fact("true", &[&q])]);
    }

    #[test]
    fn prop_action_collision() {
        let t = GroundTask {
            props: [nm("x")].into(),
            actions: vec![GroundAction::new(nm("x"), [], [], [])],
            ..Default::default()
        };
        assert_eq!(encode_adl(&t).unwrap_err(), EncodeError::Collision(nm("x")));
    }
}

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::model::{ChainOrder, Domain, Encoding, GroundAction, GroundTask, Manifest, Name, Problem, Step};
use crate::parser::parse_domain;

use super::{
    check_disjoint, check_task, fact, n, problem_name, CompiledInstance, EncodeError, ACTION_TYPE,
    PAD_TRUE, PROPOSITION_TYPE,
};

const DOMAIN_TEXT: &str = include_str!("universal-chain.pddl");

/// Exactly one of these holds in every reachable state.
pub const CONTROL_PREDICATES: [&str; 4] = ["idle", "check-pre", "apply-del", "apply-add"];

/// The STRIPS universal domain that walks each action's chains one
/// proposition at a time.
pub fn universal_chain_domain() -> Domain {
    static DOMAIN: OnceLock<Domain> = OnceLock::new();
    DOMAIN
        .get_or_init(|| parse_domain(DOMAIN_TEXT).expect("built-in chain domain parses"))
        .clone()
}

/// Lexicographic chains; an empty add list gets the pad, since `finish`
/// needs a last add element to fire.
pub fn chain_order(a: &GroundAction) -> ChainOrder {
    let mut add: Vec<Name> = a.add.iter().cloned().collect();
    if add.is_empty() {
        add.push(n(PAD_TRUE));
    }
    ChainOrder {
        pre: a.pre.iter().cloned().collect(),
        del: a.del.iter().cloned().collect(),
        add,
    }
}

/// The unique micro-step sequence applying one action.
pub fn chain_micro_steps(action: &Name, order: &ChainOrder) -> Vec<Step> {
    let step = |schema: &str, args: &[&Name]| {
        let mut v = vec![action.clone()];
        v.extend(args.iter().map(|x| (*x).clone()));
        Step::new(n(schema), v)
    };
    let (pre, del, add) = (&order.pre, &order.del, &order.add);
    let mut out = Vec::with_capacity(order.micro_len());
    match (pre.first(), del.first()) {
        (Some(p0), _) => {
            out.push(step("check-first-pre", &[p0]));
            for w in pre.windows(2) {
                out.push(step("check-next-pre", &[&w[0], &w[1]]));
            }
            let last = pre.last().unwrap();
            match del.first() {
                Some(d0) => out.push(step("apply-first-del", &[last, d0])),
                None => out.push(step("skip-apply-del", &[last, &add[0]])),
            }
        }
        (None, Some(d0)) => out.push(step("skip-check-pre", &[d0])),
        (None, None) => out.push(step("skip-check-pre-and-apply-del", &[&add[0]])),
    }
    if let Some(last_del) = del.last() {
        for w in del.windows(2) {
            out.push(step("apply-next-del", &[&w[0], &w[1]]));
        }
        out.push(step("apply-first-add", &[last_del, &add[0]]));
    }
    for w in add.windows(2) {
        out.push(step("apply-next-add", &[&w[0], &w[1]]));
    }
    out.push(step("finish", &[add.last().unwrap()]));
    out
}

pub fn encode_chain(t: &GroundTask) -> Result<CompiledInstance, EncodeError> {
    check_task(t)?;
    check_disjoint(t)?;
    let pad = n(PAD_TRUE);
    let padded = t.actions.iter().any(|a| a.add.is_empty());
    let mut objects: Vec<_> = t.props.iter().map(|p| (p.clone(), n(PROPOSITION_TYPE))).collect();
    if padded {
        objects.push((pad.clone(), n(PROPOSITION_TYPE)));
    }
    objects.extend(t.actions.iter().map(|a| (a.name.clone(), n(ACTION_TYPE))));

    let mut manifest = Manifest::new(Encoding::Chain);
    let mut init = BTreeSet::new();
    for a in &t.actions {
        let order = chain_order(a);
        for (kind, list) in [("pre", &order.pre), ("del", &order.del), ("add", &order.add)] {
            match (list.first(), list.last()) {
                (Some(first), Some(last)) => {
                    init.insert(fact(&format!("first-{kind}"), &[&a.name, first]));
                    for w in list.windows(2) {
                        init.insert(fact(&format!("next-{kind}"), &[&a.name, &w[0], &w[1]]));
                    }
                    init.insert(fact(&format!("last-{kind}"), &[&a.name, last]));
                }
                _ => {
                    init.insert(fact(&format!("has-no-{kind}"), &[&a.name]));
                }
            }
        }
        manifest.action_map.insert(a.name.clone(), vec![a.name.clone()]);
        manifest.chain_order.insert(a.name.clone(), order);
    }
    init.insert(fact("idle", &[]));
    init.extend(t.init.true_props.iter().map(|p| fact("true", &[p])));
    if padded {
        init.insert(fact("true", &[&pad]));
        manifest.pads.push(pad);
    }
    for p in &t.props {
        manifest.prop_map.insert(p.clone(), p.clone());
    }
    let mut goal = vec![fact("idle", &[])];
    goal.extend(t.goal.iter().map(|g| fact("true", &[g])));
    let domain = universal_chain_domain();
    let problem = Problem { name: problem_name(), domain_name: domain.name.clone(), objects, init, goal };
    Ok(CompiledInstance { domain, problem, manifest })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn names(v: &[&str]) -> Vec<Name> {
        v.iter().map(|s| nm(s)).collect()
    }

    fn rendered(a: &GroundAction) -> Vec<String> {
        chain_micro_steps(&a.name, &chain_order(a)).iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn domain_is_well_formed() {
        let d = universal_chain_domain();
        assert!(d.check().is_empty(), "{:?}", d.check());
        assert_eq!(d.schemata.len(), 10);
    }

    #[test]
    fn pre_then_add() {
        let a = GroundAction::new(nm("a"), names(&["p"]), names(&["q"]), []);
        assert_eq!(rendered(&a), ["(check-first-pre a p)", "(skip-apply-del a p q)", "(finish a q)"]);
    }

    #[test]
    fn delete_only_is_padded() {
        let a = GroundAction::new(nm("a"), [], [], names(&["r"]));
        assert_eq!(
            rendered(&a),
            ["(skip-check-pre a r)", "(apply-first-add a r updpad-t)", "(finish a updpad-t)"]
        );
    }

    #[test]
    fn empty_action() {
        let a = GroundAction::new(nm("a"), [], [], []);
        assert_eq!(rendered(&a), ["(skip-check-pre-and-apply-del a updpad-t)", "(finish a updpad-t)"]);
    }

    #[test]
    fn full_chains() {
        let a = GroundAction::new(nm("a"), names(&["p1", "p2"]), names(&["q1", "q2"]), names(&["r1", "r2"]));
        let order = chain_order(&a);
        let steps = rendered(&a);
        assert_eq!(steps.len(), order.micro_len());
        assert_eq!(
            steps,
            [
                "(check-first-pre a p1)",
                "(check-next-pre a p1 p2)",
                "(apply-first-del a p2 r1)",
                "(apply-next-del a r1 r2)",
                "(apply-first-add a r2 q1)",
                "(apply-next-add a q1 q2)",
                "(finish a q2)",
            ]
        );
    }
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Name, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundAction {
    pub name: Name,
    pub pre: BTreeSet<Name>,
    pub add: BTreeSet<Name>,
    pub del: BTreeSet<Name>,
}

impl GroundAction {
    pub fn new<I, J, K>(name: Name, pre: I, add: J, del: K) -> GroundAction
    where
        I: IntoIterator<Item = Name>,
        J: IntoIterator<Item = Name>,
        K: IntoIterator<Item = Name>,
    {
        GroundAction {
            name,
            pre: pre.into_iter().collect(),
            add: add.into_iter().collect(),
            del: del.into_iter().collect(),
        }
    }

    fn same_effects(&self, other: &GroundAction) -> bool {
        self.pre == other.pre && self.add == other.add && self.del == other.del
    }
}

/// A set of true propositions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State {
    pub true_props: BTreeSet<Name>,
}

impl State {
    pub fn new<I: IntoIterator<Item = Name>>(props: I) -> State {
        State {
            true_props: props.into_iter().collect(),
        }
    }

    pub fn contains(&self, p: &Name) -> bool {
        self.true_props.contains(p)
    }

    pub fn len(&self) -> usize {
        self.true_props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.true_props.is_empty()
    }
}

/// The propositional core of a planning task.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTask {
    pub props: BTreeSet<Name>,
    /// Sorted by name once canonical.
    pub actions: Vec<GroundAction>,
    pub init: State,
    pub goal: BTreeSet<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("action `{name}` is defined twice with different pre/add/del sets")]
pub struct ActionClash {
    pub name: Name,
}

impl GroundTask {
    pub fn action(&self, name: &str) -> Option<&GroundAction> {
        self.actions
            .binary_search_by(|a| a.name.as_str().cmp(name))
            .ok()
            .map(|i| &self.actions[i])
            .or_else(|| self.actions.iter().find(|a| a.name.as_str() == name))
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let outside = |set: &BTreeSet<Name>| -> Vec<Name> {
            set.iter().filter(|p| !self.props.contains(*p)).cloned().collect()
        };
        for p in outside(&self.init.true_props) {
            out.push(Violation::new(format!("init proposition `{p}` is not in props")));
        }
        for p in outside(&self.goal) {
            out.push(Violation::new(format!("goal proposition `{p}` is not in props")));
        }
        let mut seen = BTreeSet::new();
        for a in &self.actions {
            if !seen.insert(&a.name) {
                out.push(Violation::new(format!("duplicate action `{}`", a.name)));
            }
            for (kind, set) in [("pre", &a.pre), ("add", &a.add), ("del", &a.del)] {
                for p in outside(set) {
                    out.push(Violation::new(format!(
                        "action `{}`: {kind} proposition `{p}` is not in props",
                        a.name
                    )));
                }
            }
        }
        if !self.actions.windows(2).all(|w| w[0].name < w[1].name) && seen.len() == self.actions.len() {
            out.push(Violation::new("actions are not in canonical order".to_string()));
        }
        out
    }
}

/// Sorts actions by name and merges exact duplicates. Idempotent.
pub fn canonicalize(task: GroundTask) -> Result<GroundTask, ActionClash> {
    let mut by_name: BTreeMap<Name, GroundAction> = BTreeMap::new();
    for action in task.actions {
        match by_name.get(&action.name) {
            Some(existing) if !existing.same_effects(&action) => {
                return Err(ActionClash { name: action.name });
            }
            Some(_) => {}
            None => {
                by_name.insert(action.name.clone(), action);
            }
        }
    }
    Ok(GroundTask {
        props: task.props,
        actions: by_name.into_values().collect(),
        init: task.init,
        goal: task.goal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub name: Name,
    pub args: Vec<Name>,
}

impl Step {
    pub fn new(name: Name, args: Vec<Name>) -> Step {
        Step { name, args }
    }

    pub fn bare(name: Name) -> Step {
        Step { name, args: Vec::new() }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.name)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Plan {
    pub steps: Vec<Step>,
}

impl Plan {
    pub fn new(steps: Vec<Step>) -> Plan {
        Plan { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Maximum precondition, add and delete counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub p: usize,
    pub a: usize,
    pub d: usize,
}

impl Bounds {
    pub fn new(p: usize, a: usize, d: usize) -> Bounds {
        Bounds { p, a, d }
    }

    /// Pointwise `self <= other`.
    pub fn fits_within(&self, other: &Bounds) -> bool {
        self.p <= other.p && self.a <= other.a && self.d <= other.d
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.p == 0 {
            out.push(Violation::new("bounds: p must be at least 1".to_string()));
        }
        if self.a == 0 {
            out.push(Violation::new("bounds: a must be at least 1".to_string()));
        }
        out
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.a, self.d)
    }
}

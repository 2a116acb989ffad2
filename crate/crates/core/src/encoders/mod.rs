//! Compilers from ground tasks into instances of fixed universal domains.

mod adl;
mod bounds;
mod chain;
mod param;
mod tm;

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::model::{
    Atom, Bounds, Domain, Encoding, GroundAtom, GroundTask, Manifest, Name, Problem, Term, TypedVar,
    Violation,
};
use crate::parser::{print_domain, print_problem};

pub use adl::{encode_adl, universal_adl_domain};
pub use bounds::{report_bounds, BoundsReport};
pub use chain::{chain_micro_steps, chain_order, encode_chain, universal_chain_domain, CONTROL_PREDICATES};
pub use param::{encode_param, infer_bounds, param_domain};
pub use tm::{compile_tm, encode_tm, TM_BOUNDS};

/// Proposition that every param instance keeps true.
pub const PAD_TRUE: &str = "updpad-t";
/// Proposition that no param instance ever makes true.
pub const PAD_FALSE: &str = "updpad-f";
pub const RESERVED_PREFIX: &str = "updpad-";
/// The single schema of the ADL and param domains.
pub const APPLY: &str = "apply";
pub const PROPOSITION_TYPE: &str = "proposition";
pub const ACTION_TYPE: &str = "action";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("task is not well-formed: {}", join(.0))]
    InvalidTask(Vec<Violation>),
    #[error("machine is not well-formed: {}", join(.0))]
    InvalidMachine(Vec<Violation>),
    #[error("name collision: `{0}` is both a proposition and an action")]
    Collision(Name),
    #[error("name collision: `{0}` uses the reserved prefix `updpad-`")]
    Reserved(Name),
    #[error("bounds {given} are smaller than the task needs, {needed}")]
    BoundsTooSmall { given: Bounds, needed: Bounds },
    #[error("invalid bounds: {}", join(.0))]
    InvalidBounds(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.message.as_str()).collect::<Vec<_>>().join("; ")
}

/// A universal domain, its problem, and the map back to the source task.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledInstance {
    pub domain: Domain,
    pub problem: Problem,
    pub manifest: Manifest,
}

impl CompiledInstance {
    pub fn domain_text(&self) -> String {
        print_domain(&self.domain)
    }

    pub fn problem_text(&self) -> String {
        print_problem(&self.problem)
    }

    pub fn manifest_json(&self) -> String {
        self.manifest.to_json()
    }

    /// Writes `domain.pddl`, `problem.pddl` and `manifest.json`.
    pub fn write_to_dir(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("domain.pddl"), self.domain_text())?;
        fs::write(dir.join("problem.pddl"), self.problem_text())?;
        fs::write(dir.join("manifest.json"), self.manifest_json())
    }
}

pub(crate) fn n(s: &str) -> Name {
    Name::lit(s)
}

pub(crate) fn var(s: &str) -> Term {
    Term::Var(n(s))
}

pub(crate) fn atom(pred: &str, vars: &[&str]) -> Atom {
    Atom::new(n(pred), vars.iter().map(|v| var(v)).collect())
}

pub(crate) fn typed(v: &str, ty: &str) -> TypedVar {
    TypedVar::new(n(v), n(ty))
}

pub(crate) fn fact(pred: &str, args: &[&Name]) -> GroundAtom {
    GroundAtom::new(n(pred), args.iter().map(|a| (*a).clone()).collect())
}

/// Shared input checks: canonical form and no reserved names.
fn check_task(t: &GroundTask) -> Result<(), EncodeError> {
    let v = t.check();
    if !v.is_empty() {
        return Err(EncodeError::InvalidTask(v));
    }
    let names = t.props.iter().chain(t.actions.iter().map(|a| &a.name));
    if let Some(bad) = names.into_iter().find(|x| x.has_prefix(RESERVED_PREFIX)) {
        return Err(EncodeError::Reserved(bad.clone()));
    }
    Ok(())
}

/// Props and actions become objects of one namespace.
fn check_disjoint(t: &GroundTask) -> Result<(), EncodeError> {
    let actions: BTreeSet<&Name> = t.actions.iter().map(|a| &a.name).collect();
    match t.props.iter().find(|p| actions.contains(p)) {
        Some(p) => Err(EncodeError::Collision(p.clone())),
        None => Ok(()),
    }
}

fn problem_name() -> Name {
    n("task")
}

/// Dispatches on the encoding; `bounds` only matters for param.
pub fn compile(t: &GroundTask, encoding: Encoding, bounds: Option<Bounds>) -> Result<CompiledInstance, EncodeError> {
    match encoding {
        Encoding::Adl => encode_adl(t),
        Encoding::Chain => encode_chain(t),
        Encoding::Param => encode_param(t, bounds),
        Encoding::Tm211 => {
            let mut c = encode_param(t, Some(bounds.unwrap_or(TM_BOUNDS)))?;
            c.manifest.encoding = Encoding::Tm211;
            Ok(c)
        }
    }
}

//! Instantiates a lifted domain and problem into a [`GroundTask`].
//!
//! Static predicates (never touched by an effect) are evaluated against
//! the initial state during instantiation, so `forall`, `imply`, `when`
//! and `=` resolve away whenever their conditions are static. That is
//! exactly the fragment the universal domains need.

mod interchange;
mod mangle;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{
    canonicalize, ActionClash, ActionSchema, Atom, Condition, Domain, Effect, GroundAction,
    GroundAtom, GroundTask, Name, Plan, Problem, State, Step, Term, Violation, OBJECT_TYPE,
};

pub use interchange::{read_task, write_task, InterchangeError};
pub use mangle::mangle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("domain is not well-formed: {}", join(.0))]
    InvalidDomain(Vec<Violation>),
    #[error("problem is not well-formed: {}", join(.0))]
    InvalidProblem(Vec<Violation>),
    #[error("action `{schema}`: unsupported construct: {message}")]
    Unsupported { schema: Name, message: String },
    #[error("name collision: `{name}` is produced by both {first} and {second}")]
    Collision { name: Name, first: String, second: String },
    #[error(transparent)]
    Clash(#[from] ActionClash),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.message.as_str()).collect::<Vec<_>>().join("; ")
}

/// Predicates that occur in no schema's effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticInfo {
    pub static_preds: BTreeSet<Name>,
}

impl StaticInfo {
    pub fn is_static(&self, predicate: &Name) -> bool {
        self.static_preds.contains(predicate)
    }
}

pub fn detect_statics(domain: &Domain) -> StaticInfo {
    fn walk<'a>(e: &'a Effect, out: &mut BTreeSet<&'a Name>) {
        match e {
            Effect::Add(a) | Effect::Del(a) => {
                out.insert(&a.predicate);
            }
            Effect::And(es) => es.iter().for_each(|e| walk(e, out)),
            Effect::Forall(_, e) | Effect::When(_, e) => walk(e, out),
        }
    }
    let mut touched = BTreeSet::new();
    for s in &domain.schemata {
        walk(&s.effect, &mut touched);
    }
    StaticInfo {
        static_preds: domain
            .predicates
            .iter()
            .map(|p| &p.name)
            .filter(|p| !touched.contains(p))
            .cloned()
            .collect(),
    }
}

/// Where each mangled name of a grounded task came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceMap {
    pub props: BTreeMap<Name, GroundAtom>,
    pub actions: BTreeMap<Name, Step>,
}

impl SourceMap {
    /// Rewrites steps named by ground action into `(schema args...)` form.
    /// Steps that are already lifted (or unknown) pass through unchanged.
    pub fn lift_plan(&self, plan: &Plan) -> Plan {
        Plan::new(
            plan.steps
                .iter()
                .map(|s| match (s.args.is_empty(), self.actions.get(&s.name)) {
                    (true, Some(src)) => src.clone(),
                    _ => s.clone(),
                })
                .collect(),
        )
    }
}

/// How schema parameters are enumerated. Both produce identical tasks;
/// `Naive` exists as the reference for the join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Bind parameters by matching positive static preconditions against
    /// the initial state, then enumerate whatever is left.
    #[default]
    Join,
    /// Every type-correct tuple.
    Naive,
}

pub fn ground(domain: &Domain, problem: &Problem) -> Result<(GroundTask, SourceMap), GroundError> {
    ground_with(domain, problem, Strategy::Join)
}

pub fn ground_with(
    domain: &Domain,
    problem: &Problem,
    strategy: Strategy,
) -> Result<(GroundTask, SourceMap), GroundError> {
    let v = domain.check();
    if !v.is_empty() {
        return Err(GroundError::InvalidDomain(v));
    }
    let v = problem.check(domain);
    if !v.is_empty() {
        return Err(GroundError::InvalidProblem(v));
    }
    let statics = detect_statics(domain);
    for s in &domain.schemata {
        check_supported(s, &statics)?;
    }
    let ctx = Ctx::new(domain, problem, &statics);

    let per_schema: Vec<Vec<RawAction>> = domain
        .schemata
        .par_iter()
        .map(|s| ctx.instantiate(s, strategy))
        .collect();

    let mut names = Names::default();
    let mut actions = Vec::new();
    for raw in per_schema.into_iter().flatten() {
        let name = names.action(&raw.step)?;
        let mut mangle_all = |atoms: &[GroundAtom]| -> Result<BTreeSet<Name>, GroundError> {
            atoms.iter().map(|a| names.prop(a)).collect()
        };
        let pre = mangle_all(&raw.pre)?;
        let add = mangle_all(&raw.add)?;
        let del = mangle_all(&raw.del)?;
        actions.push(GroundAction { name, pre, add, del });
    }

    let mut init = BTreeSet::new();
    for atom in &problem.init {
        if !statics.is_static(&atom.predicate) {
            init.insert(names.prop(atom)?);
        }
    }
    let mut goal = BTreeSet::new();
    for atom in &problem.goal {
        if statics.is_static(&atom.predicate) && problem.init.contains(atom) {
            continue;
        }
        goal.insert(names.prop(atom)?);
    }

    let task = canonicalize(GroundTask {
        props: names.sources.props.keys().cloned().collect(),
        actions,
        init: State { true_props: init },
        goal,
    })?;
    Ok((task, names.sources))
}

#[derive(Default)]
struct Names {
    sources: SourceMap,
}

impl Names {
    fn prop(&mut self, atom: &GroundAtom) -> Result<Name, GroundError> {
        let name = mangle(&atom.predicate, &atom.args);
        match self.sources.props.get(&name) {
            Some(prev) if prev != atom => Err(GroundError::Collision {
                name,
                first: describe(&prev.predicate, &prev.args),
                second: describe(&atom.predicate, &atom.args),
            }),
            Some(_) => Ok(name),
            None => {
                self.sources.props.insert(name.clone(), atom.clone());
                Ok(name)
            }
        }
    }

    fn action(&mut self, step: &Step) -> Result<Name, GroundError> {
        let name = mangle(&step.name, &step.args);
        match self.sources.actions.get(&name) {
            Some(prev) if prev != step => Err(GroundError::Collision {
                name,
                first: describe(&prev.name, &prev.args),
                second: describe(&step.name, &step.args),
            }),
            _ => {
                self.sources.actions.insert(name.clone(), step.clone());
                Ok(name)
            }
        }
    }
}

fn describe(head: &Name, args: &[Name]) -> String {
    Step::new(head.clone(), args.to_vec()).to_string()
}

fn mentions_fluent(c: &Condition, statics: &StaticInfo) -> bool {
    match c {
        Condition::Atom(a) => !statics.is_static(&a.predicate),
        Condition::And(cs) => cs.iter().any(|c| mentions_fluent(c, statics)),
        Condition::Not(c) | Condition::Forall(_, c) => mentions_fluent(c, statics),
        Condition::Imply(a, b) => mentions_fluent(a, statics) || mentions_fluent(b, statics),
        Condition::Equals(..) => false,
    }
}

/// Rejects constructs outside the positive-STRIPS-after-statics fragment,
/// independent of the instance.
fn check_supported(schema: &ActionSchema, statics: &StaticInfo) -> Result<(), GroundError> {
    let fail = |message: String| GroundError::Unsupported { schema: schema.name.clone(), message };
    fn cond(c: &Condition, statics: &StaticInfo) -> Result<(), String> {
        match c {
            Condition::Atom(_) | Condition::Equals(..) => Ok(()),
            Condition::And(cs) => cs.iter().try_for_each(|c| cond(c, statics)),
            Condition::Forall(_, c) => cond(c, statics),
            Condition::Not(c) if mentions_fluent(c, statics) => {
                Err("negative precondition on a fluent predicate".into())
            }
            Condition::Not(_) => Ok(()),
            Condition::Imply(a, _) if mentions_fluent(a, statics) => {
                Err("`imply` whose condition mentions a fluent predicate".into())
            }
            Condition::Imply(_, b) => cond(b, statics),
        }
    }
    fn eff(e: &Effect, statics: &StaticInfo) -> Result<(), String> {
        match e {
            Effect::Add(_) | Effect::Del(_) => Ok(()),
            Effect::And(es) => es.iter().try_for_each(|e| eff(e, statics)),
            Effect::Forall(_, e) => eff(e, statics),
            Effect::When(c, _) if mentions_fluent(c, statics) => {
                Err("`when` whose condition mentions a fluent predicate".into())
            }
            Effect::When(_, e) => eff(e, statics),
        }
    }
    cond(&schema.precondition, statics).map_err(fail)?;
    eff(&schema.effect, statics).map_err(fail)
}

struct RawAction {
    step: Step,
    pre: Vec<GroundAtom>,
    add: Vec<GroundAtom>,
    del: Vec<GroundAtom>,
}

/// Variable bindings; tiny, so a stack with linear lookup.
#[derive(Default, Clone)]
struct Env<'a> {
    vars: Vec<(&'a Name, &'a Name)>,
}

impl<'a> Env<'a> {
    fn get(&self, v: &Name) -> Option<&'a Name> {
        self.vars.iter().rev().find(|(k, _)| *k == v).map(|(_, o)| *o)
    }

    fn resolve(&self, t: &'a Term) -> &'a Name {
        match t {
            Term::Var(v) => self.get(v).expect("checked domains have no free variables"),
            Term::Const(c) => c,
        }
    }

    fn ground(&self, a: &'a Atom) -> GroundAtom {
        GroundAtom::new(a.predicate.clone(), a.args.iter().map(|t| self.resolve(t).clone()).collect())
    }
}

struct Ctx<'a> {
    statics: &'a StaticInfo,
    static_init: HashSet<&'a GroundAtom>,
    init_by_pred: BTreeMap<&'a Name, Vec<&'a GroundAtom>>,
    object_type: BTreeMap<&'a Name, &'a Name>,
    by_type: BTreeMap<&'a Name, Vec<&'a Name>>,
    all_objects: Vec<&'a Name>,
}

impl<'a> Ctx<'a> {
    fn new(domain: &'a Domain, problem: &'a Problem, statics: &'a StaticInfo) -> Ctx<'a> {
        let static_atoms: Vec<&GroundAtom> =
            problem.init.iter().filter(|a| statics.is_static(&a.predicate)).collect();
        let mut init_by_pred: BTreeMap<&Name, Vec<&GroundAtom>> = BTreeMap::new();
        for a in &static_atoms {
            init_by_pred.entry(&a.predicate).or_default().push(a);
        }
        let mut by_type: BTreeMap<&Name, Vec<&Name>> = BTreeMap::new();
        for t in &domain.types {
            by_type.insert(t, Vec::new());
        }
        let mut all_objects = Vec::new();
        for (o, t) in &problem.objects {
            by_type.entry(t).or_default().push(o);
            all_objects.push(o);
        }
        for objs in by_type.values_mut() {
            objs.sort();
        }
        all_objects.sort();
        Ctx {
            statics,
            static_init: static_atoms.into_iter().collect(),
            init_by_pred,
            object_type: problem.objects.iter().map(|(o, t)| (o, t)).collect(),
            by_type,
            all_objects,
        }
    }

    fn objects_of(&self, ty: &Name) -> &[&'a Name] {
        if ty.as_str() == OBJECT_TYPE {
            &self.all_objects
        } else {
            self.by_type.get(ty).map(Vec::as_slice).unwrap_or(&[])
        }
    }

    fn has_type(&self, obj: &Name, ty: &Name) -> bool {
        ty.as_str() == OBJECT_TYPE || self.object_type.get(obj).is_some_and(|t| *t == ty)
    }

    fn instantiate(&self, schema: &'a ActionSchema, strategy: Strategy) -> Vec<RawAction> {
        let mut out = Vec::new();
        let mut env = Env::default();
        match strategy {
            Strategy::Naive => self.enumerate_rest(schema, &mut env, &mut out),
            Strategy::Join => {
                let mut atoms = Vec::new();
                positive_static_atoms(&schema.precondition, self.statics, &mut atoms);
                self.join(schema, &atoms, &mut env, &mut out);
            }
        }
        out
    }

    fn join(&self, schema: &'a ActionSchema, atoms: &[&'a Atom], env: &mut Env<'a>, out: &mut Vec<RawAction>) {
        let Some((atom, rest)) = atoms.split_first() else {
            self.enumerate_rest(schema, env, out);
            return;
        };
        let Some(facts) = self.init_by_pred.get(&atom.predicate) else {
            return;
        };
        'facts: for &fact in facts {
            let mark = env.vars.len();
            for (term, obj) in atom.args.iter().zip(&fact.args) {
                let ok = match term {
                    Term::Const(c) => c == obj,
                    Term::Var(v) => match env.get(v) {
                        Some(bound) => bound == obj,
                        None => {
                            let param = schema.params.iter().find(|p| &p.var == v);
                            let ty_ok = param.is_some_and(|p| self.has_type(obj, &p.ty));
                            if ty_ok {
                                env.vars.push((v, obj));
                            }
                            ty_ok
                        }
                    },
                };
                if !ok {
                    env.vars.truncate(mark);
                    continue 'facts;
                }
            }
            self.join(schema, rest, env, out);
            env.vars.truncate(mark);
        }
    }

    fn enumerate_rest(&self, schema: &'a ActionSchema, env: &mut Env<'a>, out: &mut Vec<RawAction>) {
        let Some(param) = schema.params.iter().find(|p| env.get(&p.var).is_none()) else {
            if let Some(a) = self.build(schema, env) {
                out.push(a);
            }
            return;
        };
        for &obj in self.objects_of(&param.ty) {
            env.vars.push((&param.var, obj));
            self.enumerate_rest(schema, env, out);
            env.vars.pop();
        }
    }

    fn build(&self, schema: &'a ActionSchema, env: &mut Env<'a>) -> Option<RawAction> {
        let mut pre = Vec::new();
        if !self.eval(&schema.precondition, env, &mut pre) {
            return None;
        }
        let mut add = Vec::new();
        let mut del = Vec::new();
        self.effects(&schema.effect, env, &mut add, &mut del);
        let args = schema.params.iter().map(|p| env.get(&p.var).unwrap().clone()).collect();
        Some(RawAction { step: Step::new(schema.name.clone(), args), pre, add, del })
    }

    /// Collects fluent atoms of a precondition; false when a static part fails.
    fn eval(&self, c: &'a Condition, env: &mut Env<'a>, out: &mut Vec<GroundAtom>) -> bool {
        match c {
            Condition::Atom(a) if self.statics.is_static(&a.predicate) => {
                self.static_init.contains(&env.ground(a))
            }
            Condition::Atom(a) => {
                out.push(env.ground(a));
                true
            }
            Condition::And(cs) => cs.iter().all(|c| self.eval(c, env, out)),
            Condition::Not(c) => !self.holds(c, env),
            Condition::Imply(a, b) => !self.holds(a, env) || self.eval(b, env, out),
            Condition::Forall(tv, body) => {
                for &obj in self.objects_of(&tv.ty) {
                    env.vars.push((&tv.var, obj));
                    let ok = self.eval(body, env, out);
                    env.vars.pop();
                    if !ok {
                        return false;
                    }
                }
                true
            }
            Condition::Equals(a, b) => env.resolve(a) == env.resolve(b),
        }
    }

    /// Truth of a condition over static predicates only.
    fn holds(&self, c: &'a Condition, env: &mut Env<'a>) -> bool {
        let mut fluents = Vec::new();
        let ok = self.eval(c, env, &mut fluents);
        debug_assert!(fluents.is_empty(), "static condition produced fluents");
        ok
    }

    fn effects(&self, e: &'a Effect, env: &mut Env<'a>, add: &mut Vec<GroundAtom>, del: &mut Vec<GroundAtom>) {
        match e {
            Effect::Add(a) => add.push(env.ground(a)),
            Effect::Del(a) => del.push(env.ground(a)),
            Effect::And(es) => es.iter().for_each(|e| self.effects(e, env, add, del)),
            Effect::Forall(tv, body) => {
                for &obj in self.objects_of(&tv.ty) {
                    env.vars.push((&tv.var, obj));
                    self.effects(body, env, add, del);
                    env.vars.pop();
                }
            }
            Effect::When(c, body) => {
                if self.holds(c, env) {
                    self.effects(body, env, add, del);
                }
            }
        }
    }
}

/// Positive static atoms reachable through top-level conjunctions.
fn positive_static_atoms<'a>(c: &'a Condition, statics: &StaticInfo, out: &mut Vec<&'a Atom>) {
    match c {
        Condition::Atom(a) if statics.is_static(&a.predicate) => out.push(a),
        Condition::And(cs) => cs.iter().for_each(|c| positive_static_atoms(c, statics, out)),
        _ => {}
    }
}

#[cfg(test)]
mod tests;

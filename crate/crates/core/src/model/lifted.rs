//! Lifted PDDL syntax: domains, problems and their formulas.

use std::collections::{BTreeMap, BTreeSet};

use super::{Name, Violation};

/// The implicit root type every object belongs to.
pub const OBJECT_TYPE: &str = "object";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Name),
    Const(Name),
}

impl Term {
    pub fn var(&self) -> Option<&Name> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedVar {
    pub var: Name,
    pub ty: Name,
}

impl TypedVar {
    pub fn new(var: Name, ty: Name) -> TypedVar {
        TypedVar { var, ty }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: Name,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: Name, args: Vec<Term>) -> Atom {
        Atom { predicate, args }
    }
}

/// A variable-free atom, as found in `:init` and `:goal`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: Name,
    pub args: Vec<Name>,
}

impl GroundAtom {
    pub fn new(predicate: Name, args: Vec<Name>) -> GroundAtom {
        GroundAtom { predicate, args }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    Atom(Atom),
    And(Vec<Condition>),
    Not(Box<Condition>),
    Imply(Box<Condition>, Box<Condition>),
    Forall(TypedVar, Box<Condition>),
    Equals(Term, Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Effect {
    Add(Atom),
    Del(Atom),
    And(Vec<Effect>),
    Forall(TypedVar, Box<Effect>),
    When(Condition, Box<Effect>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateDecl {
    pub name: Name,
    pub params: Vec<TypedVar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSchema {
    pub name: Name,
    pub params: Vec<TypedVar>,
    pub precondition: Condition,
    pub effect: Effect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub name: Name,
    /// Requirement flags without the leading colon. Recorded, not enforced.
    pub requirements: Vec<Name>,
    pub types: Vec<Name>,
    pub predicates: Vec<PredicateDecl>,
    pub schemata: Vec<ActionSchema>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub name: Name,
    pub domain_name: Name,
    pub objects: Vec<(Name, Name)>,
    pub init: BTreeSet<GroundAtom>,
    /// Conjunction of positive ground atoms, in source order.
    pub goal: Vec<GroundAtom>,
}

impl Domain {
    pub fn predicate(&self, name: &Name) -> Option<&PredicateDecl> {
        self.predicates.iter().find(|p| &p.name == name)
    }

    pub fn max_arity(&self) -> usize {
        self.predicates.iter().map(|p| p.params.len()).max().unwrap_or(0)
    }

    /// Validation pass; a well-formed domain yields no violations.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for p in &self.predicates {
            if !seen.insert(&p.name) {
                out.push(Violation::new(format!("duplicate predicate `{}`", p.name)));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.schemata {
            if !seen.insert(&s.name) {
                out.push(Violation::new(format!("duplicate action schema `{}`", s.name)));
            }
        }
        let mut seen = BTreeSet::new();
        for t in &self.types {
            if !seen.insert(t) {
                out.push(Violation::new(format!("duplicate type `{t}`")));
            }
        }

        let arities: BTreeMap<&Name, usize> =
            self.predicates.iter().map(|p| (&p.name, p.params.len())).collect();

        for p in &self.predicates {
            let ctx = format!("predicate `{}`", p.name);
            self.check_params(&ctx, &p.params, &mut out);
        }
        for s in &self.schemata {
            let ctx = format!("action `{}`", s.name);
            self.check_params(&ctx, &s.params, &mut out);
            let mut scope: Vec<&Name> = s.params.iter().map(|p| &p.var).collect();
            check_condition(&ctx, &s.precondition, &mut scope, &arities, self, &mut out);
            check_effect(&ctx, &s.effect, &mut scope, &arities, self, false, &mut out);
        }
        out
    }

    pub(crate) fn has_type(&self, ty: &Name) -> bool {
        ty.as_str() == OBJECT_TYPE || self.types.contains(ty)
    }

    fn check_params(&self, ctx: &str, params: &[TypedVar], out: &mut Vec<Violation>) {
        let mut seen = BTreeSet::new();
        for p in params {
            if !seen.insert(&p.var) {
                out.push(Violation::new(format!("{ctx}: duplicate parameter `?{}`", p.var)));
            }
            if !self.has_type(&p.ty) {
                out.push(Violation::new(format!("{ctx}: undeclared type `{}`", p.ty)));
            }
        }
    }
}

fn check_terms(
    ctx: &str,
    atom: &Atom,
    scope: &[&Name],
    arities: &BTreeMap<&Name, usize>,
    out: &mut Vec<Violation>,
) {
    match arities.get(&atom.predicate) {
        None => out.push(Violation::new(format!(
            "{ctx}: undeclared predicate `{}`",
            atom.predicate
        ))),
        Some(&n) if n != atom.args.len() => out.push(Violation::new(format!(
            "{ctx}: predicate `{}` expects {n} arguments, got {}",
            atom.predicate,
            atom.args.len()
        ))),
        _ => {}
    }
    for t in &atom.args {
        check_term(ctx, t, scope, out);
    }
}

fn check_term(ctx: &str, term: &Term, scope: &[&Name], out: &mut Vec<Violation>) {
    match term {
        Term::Var(v) if !scope.contains(&v) => {
            out.push(Violation::new(format!("{ctx}: free variable `?{v}`")))
        }
        Term::Const(c) => out.push(Violation::new(format!(
            "{ctx}: constant `{c}` in schema (domain constants are not supported)"
        ))),
        _ => {}
    }
}

fn bind<'a>(
    ctx: &str,
    tv: &'a TypedVar,
    scope: &mut Vec<&'a Name>,
    domain: &Domain,
    out: &mut Vec<Violation>,
) {
    if scope.contains(&&tv.var) {
        out.push(Violation::new(format!(
            "{ctx}: quantified variable `?{}` shadows an outer variable",
            tv.var
        )));
    }
    if !domain.has_type(&tv.ty) {
        out.push(Violation::new(format!("{ctx}: undeclared type `{}`", tv.ty)));
    }
    scope.push(&tv.var);
}

fn check_condition<'a>(
    ctx: &str,
    c: &'a Condition,
    scope: &mut Vec<&'a Name>,
    arities: &BTreeMap<&Name, usize>,
    domain: &Domain,
    out: &mut Vec<Violation>,
) {
    match c {
        Condition::Atom(a) => check_terms(ctx, a, scope, arities, out),
        Condition::And(cs) => {
            for c in cs {
                check_condition(ctx, c, scope, arities, domain, out);
            }
        }
        Condition::Not(c) => check_condition(ctx, c, scope, arities, domain, out),
        Condition::Imply(a, b) => {
            check_condition(ctx, a, scope, arities, domain, out);
            check_condition(ctx, b, scope, arities, domain, out);
        }
        Condition::Forall(tv, body) => {
            bind(ctx, tv, scope, domain, out);
            check_condition(ctx, body, scope, arities, domain, out);
            scope.pop();
        }
        Condition::Equals(a, b) => {
            check_term(ctx, a, scope, out);
            check_term(ctx, b, scope, out);
        }
    }
}

fn check_effect<'a>(
    ctx: &str,
    e: &'a Effect,
    scope: &mut Vec<&'a Name>,
    arities: &BTreeMap<&Name, usize>,
    domain: &Domain,
    in_when: bool,
    out: &mut Vec<Violation>,
) {
    match e {
        Effect::Add(a) | Effect::Del(a) => check_terms(ctx, a, scope, arities, out),
        Effect::And(es) => {
            for e in es {
                check_effect(ctx, e, scope, arities, domain, in_when, out);
            }
        }
        Effect::Forall(tv, body) => {
            bind(ctx, tv, scope, domain, out);
            check_effect(ctx, body, scope, arities, domain, in_when, out);
            scope.pop();
        }
        Effect::When(c, body) => {
            if in_when {
                out.push(Violation::new(format!("{ctx}: nested `when`")));
            }
            check_condition(ctx, c, scope, arities, domain, out);
            check_effect(ctx, body, scope, arities, domain, true, out);
        }
    }
}

impl Problem {
    /// Validation against the domain the problem claims to instantiate.
    pub fn check(&self, domain: &Domain) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.domain_name != domain.name {
            out.push(Violation::new(format!(
                "problem is for domain `{}`, not `{}`",
                self.domain_name, domain.name
            )));
        }
        let mut types: BTreeMap<&Name, &Name> = BTreeMap::new();
        for (obj, ty) in &self.objects {
            if types.insert(obj, ty).is_some() {
                out.push(Violation::new(format!("duplicate object `{obj}`")));
            }
            if !domain.has_type(ty) {
                out.push(Violation::new(format!("object `{obj}` has undeclared type `{ty}`")));
            }
        }
        for (section, atoms) in [
            ("init", self.init.iter().collect::<Vec<_>>()),
            ("goal", self.goal.iter().collect()),
        ] {
            for atom in atoms {
                check_ground_atom(section, atom, domain, &types, &mut out);
            }
        }
        out
    }
}

fn check_ground_atom(
    section: &str,
    atom: &GroundAtom,
    domain: &Domain,
    types: &BTreeMap<&Name, &Name>,
    out: &mut Vec<Violation>,
) {
    let Some(decl) = domain.predicate(&atom.predicate) else {
        out.push(Violation::new(format!(
            "{section}: undeclared predicate `{}`",
            atom.predicate
        )));
        return;
    };
    if decl.params.len() != atom.args.len() {
        out.push(Violation::new(format!(
            "{section}: predicate `{}` expects {} arguments, got {}",
            atom.predicate,
            decl.params.len(),
            atom.args.len()
        )));
        return;
    }
    for (arg, param) in atom.args.iter().zip(&decl.params) {
        match types.get(arg) {
            None => out.push(Violation::new(format!(
                "{section}: undeclared object `{arg}` in ({} ...)",
                atom.predicate
            ))),
            Some(ty) if param.ty.as_str() != OBJECT_TYPE && *ty != &param.ty => {
                out.push(Violation::new(format!(
                    "{section}: object `{arg}` of type `{ty}` used where `{}` is expected",
                    param.ty
                )))
            }
            _ => {}
        }
    }
}

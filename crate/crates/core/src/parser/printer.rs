//! Deterministic PDDL output: lowercase, two-space indent, LF endings.

use std::fmt::Write;

use crate::model::{Atom, Condition, Domain, Effect, GroundAtom, Name, Problem, Term, TypedVar, OBJECT_TYPE};

/// Prints `items` with their types, grouping runs of the same type. A
/// trailing run of `object` is left untyped.
fn typed_list<'a>(items: impl IntoIterator<Item = (String, &'a Name)>) -> Vec<String> {
    let items: Vec<(String, &Name)> = items.into_iter().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let ty = items[i].1;
        let mut j = i;
        while j < items.len() && items[j].1 == ty {
            j += 1;
        }
        let run: Vec<&str> = items[i..j].iter().map(|(s, _)| s.as_str()).collect();
        if j == items.len() && ty.as_str() == OBJECT_TYPE {
            out.push(run.join(" "));
        } else {
            out.push(format!("{} - {}", run.join(" "), ty));
        }
        i = j;
    }
    out
}

fn typed_vars(vars: &[TypedVar]) -> String {
    typed_list(vars.iter().map(|v| (format!("?{}", v.var), &v.ty))).join(" ")
}

fn term(t: &Term) -> String {
    match t {
        Term::Var(v) => format!("?{v}"),
        Term::Const(c) => c.to_string(),
    }
}

fn atom(a: &Atom) -> String {
    let mut s = format!("({}", a.predicate);
    for t in &a.args {
        s.push(' ');
        s.push_str(&term(t));
    }
    s.push(')');
    s
}

fn ground_atom(a: &GroundAtom) -> String {
    let mut s = format!("({}", a.predicate);
    for t in &a.args {
        s.push(' ');
        s.push_str(t.as_str());
    }
    s.push(')');
    s
}

fn joined<T>(head: &str, items: &[T], f: impl Fn(&T) -> String) -> String {
    let mut s = format!("({head}");
    for x in items {
        s.push(' ');
        s.push_str(&f(x));
    }
    s.push(')');
    s
}

pub fn print_condition(c: &Condition) -> String {
    match c {
        Condition::Atom(a) => atom(a),
        Condition::And(cs) => joined("and", cs, print_condition),
        Condition::Not(c) => format!("(not {})", print_condition(c)),
        Condition::Imply(a, b) => format!("(imply {} {})", print_condition(a), print_condition(b)),
        Condition::Forall(v, body) => format!(
            "(forall ({}) {})",
            typed_vars(std::slice::from_ref(v)),
            print_condition(body)
        ),
        Condition::Equals(a, b) => format!("(= {} {})", term(a), term(b)),
    }
}

pub fn print_effect(e: &Effect) -> String {
    match e {
        Effect::Add(a) => atom(a),
        Effect::Del(a) => format!("(not {})", atom(a)),
        Effect::And(es) => joined("and", es, print_effect),
        Effect::Forall(v, body) => format!(
            "(forall ({}) {})",
            typed_vars(std::slice::from_ref(v)),
            print_effect(body)
        ),
        Effect::When(c, body) => format!("(when {} {})", print_condition(c), print_effect(body)),
    }
}

pub fn print_domain(d: &Domain) -> String {
    let mut out = String::new();
    writeln!(out, "(define (domain {})", d.name).unwrap();
    if !d.requirements.is_empty() {
        let flags: Vec<String> = d.requirements.iter().map(|r| format!(":{r}")).collect();
        writeln!(out, "  (:requirements {})", flags.join(" ")).unwrap();
    }
    if !d.types.is_empty() {
        let types: Vec<&str> = d.types.iter().map(Name::as_str).collect();
        writeln!(out, "  (:types {})", types.join(" ")).unwrap();
    }
    if d.predicates.is_empty() {
        out.push_str("  (:predicates)\n");
    } else {
        out.push_str("  (:predicates\n");
        for p in &d.predicates {
            if p.params.is_empty() {
                writeln!(out, "    ({})", p.name).unwrap();
            } else {
                writeln!(out, "    ({} {})", p.name, typed_vars(&p.params)).unwrap();
            }
        }
        out.push_str("  )\n");
    }
    for s in &d.schemata {
        writeln!(out, "  (:action {}", s.name).unwrap();
        writeln!(out, "    :parameters ({})", typed_vars(&s.params)).unwrap();
        writeln!(out, "    :precondition {}", print_condition(&s.precondition)).unwrap();
        writeln!(out, "    :effect {}", print_effect(&s.effect)).unwrap();
        out.push_str("  )\n");
    }
    out.push_str(")\n");
    out
}

pub fn print_problem(p: &Problem) -> String {
    let mut out = String::new();
    writeln!(out, "(define (problem {})", p.name).unwrap();
    writeln!(out, "  (:domain {})", p.domain_name).unwrap();
    if p.objects.is_empty() {
        out.push_str("  (:objects)\n");
    } else {
        out.push_str("  (:objects\n");
        for group in typed_list(p.objects.iter().map(|(o, t)| (o.to_string(), t))) {
            writeln!(out, "    {group}").unwrap();
        }
        out.push_str("  )\n");
    }
    let mut init: Vec<String> = p.init.iter().map(ground_atom).collect();
    init.sort();
    if init.is_empty() {
        out.push_str("  (:init)\n");
    } else {
        out.push_str("  (:init\n");
        for a in init {
            writeln!(out, "    {a}").unwrap();
        }
        out.push_str("  )\n");
    }
    writeln!(out, "  (:goal {})", joined("and", &p.goal, ground_atom)).unwrap();
    out.push_str(")\n");
    out
}

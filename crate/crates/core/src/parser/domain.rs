use crate::model::{ActionSchema, Atom, Condition, Domain, Effect, Name, PredicateDecl, Term, TypedVar};

use super::sexpr::{read_one, SExpr};
use super::{define_header, list_at, name_at, typed_list, var_at, Diagnostic, ParseError};

const REQUIREMENTS: &[&str] = &[
    "strips",
    "typing",
    "negative-preconditions",
    "equality",
    "adl",
    "conditional-effects",
    "universal-preconditions",
];

pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    parse_domain_with_diagnostics(text).map(|(d, _)| d)
}

/// Like [`parse_domain`], also returning remarks about irregular but
/// accepted input (currently the `:predictes` misspelling).
pub fn parse_domain_with_diagnostics(text: &str) -> Result<(Domain, Vec<Diagnostic>), ParseError> {
    let top = read_one(text)?;
    let (name, sections) = define_header(&top, "domain")?;
    let mut domain = Domain {
        name,
        requirements: Vec::new(),
        types: Vec::new(),
        predicates: Vec::new(),
        schemata: Vec::new(),
    };
    let mut diagnostics = Vec::new();
    for section in sections {
        let items = list_at(section, "a domain section")?;
        let Some(head) = section.head() else {
            return Err(ParseError::syntax(section.pos(), "empty domain section"));
        };
        let body = &items[1..];
        match head {
            ":requirements" => domain.requirements.extend(requirements(body)?),
            ":types" => {
                for t in body {
                    if t.symbol() == Some("-") {
                        return Err(ParseError::unsupported(t.pos(), "type hierarchy"));
                    }
                    domain.types.push(name_at(t)?);
                }
            }
            ":predicates" | ":predictes" => {
                if head == ":predictes" {
                    let pos = section.pos();
                    diagnostics.push(Diagnostic {
                        line: pos.line,
                        col: pos.col,
                        message: "`:predictes` read as `:predicates`".into(),
                    });
                }
                for p in body {
                    domain.predicates.push(predicate(p)?);
                }
            }
            ":action" => domain.schemata.push(action(section, body)?),
            other if other.starts_with(':') => {
                return Err(ParseError::unsupported(section.pos(), other));
            }
            other => {
                return Err(ParseError::syntax(
                    section.pos(),
                    format!("unexpected `{other}` in domain"),
                ))
            }
        }
    }
    Ok((domain, diagnostics))
}

pub(super) fn requirements(body: &[SExpr]) -> Result<Vec<Name>, ParseError> {
    body.iter()
        .map(|r| {
            let s = r
                .symbol()
                .and_then(|s| s.strip_prefix(':'))
                .ok_or_else(|| ParseError::syntax(r.pos(), "expected a `:requirement` flag"))?;
            if REQUIREMENTS.contains(&s) {
                Ok(Name::lit(s))
            } else {
                Err(ParseError::unsupported(r.pos(), format!(":{s}")))
            }
        })
        .collect()
}

fn typed_vars(items: &[SExpr]) -> Result<Vec<TypedVar>, ParseError> {
    Ok(typed_list(items, var_at)?
        .into_iter()
        .map(|(var, ty)| TypedVar::new(var, ty))
        .collect())
}

fn predicate(expr: &SExpr) -> Result<PredicateDecl, ParseError> {
    let items = list_at(expr, "a predicate declaration")?;
    let Some(head) = items.first() else {
        return Err(ParseError::syntax(expr.pos(), "empty predicate declaration"));
    };
    Ok(PredicateDecl { name: name_at(head)?, params: typed_vars(&items[1..])? })
}

fn action(section: &SExpr, body: &[SExpr]) -> Result<ActionSchema, ParseError> {
    let name = name_at(
        body.first()
            .ok_or_else(|| ParseError::syntax(section.pos(), "`:action` without a name"))?,
    )?;
    let mut params = Vec::new();
    let mut precondition = Condition::And(Vec::new());
    let mut effect = Effect::And(Vec::new());
    let mut rest = &body[1..];
    while let Some(key) = rest.first() {
        let value = rest
            .get(1)
            .ok_or_else(|| ParseError::syntax(key.pos(), "action keyword without a value"))?;
        match key.symbol() {
            Some(":parameters") => params = typed_vars(list_at(value, "a parameter list")?)?,
            Some(":precondition") => precondition = condition(value)?,
            Some(":effect") => effect = effect_of(value)?,
            Some(k) if k.starts_with(':') => return Err(ParseError::unsupported(key.pos(), k)),
            _ => return Err(ParseError::syntax(key.pos(), "expected an action keyword")),
        }
        rest = &rest[2..];
    }
    Ok(ActionSchema { name, params, precondition, effect })
}

fn term(expr: &SExpr) -> Result<Term, ParseError> {
    match expr.symbol() {
        Some(s) if s.starts_with('?') => var_at(expr).map(Term::Var),
        _ => name_at(expr).map(Term::Const),
    }
}

fn atom(expr: &SExpr) -> Result<Atom, ParseError> {
    let items = list_at(expr, "an atom")?;
    let Some(head) = items.first() else {
        return Err(ParseError::syntax(expr.pos(), "empty atom"));
    };
    if let Some(s) = head.symbol() {
        if s.starts_with('?') || s.starts_with(':') {
            return Err(ParseError::syntax(head.pos(), format!("`{s}` cannot start an atom")));
        }
    }
    let args = items[1..].iter().map(term).collect::<Result<_, _>>()?;
    Ok(Atom::new(name_at(head)?, args))
}

/// `(forall (?x - t ?y - u) body)`: one nested binder per variable.
fn binders(expr: &SExpr, items: &[SExpr]) -> Result<(Vec<TypedVar>, SExpr), ParseError> {
    if items.len() != 3 {
        return Err(ParseError::syntax(expr.pos(), "`forall` takes a variable list and a body"));
    }
    let vars = typed_vars(list_at(&items[1], "a variable list")?)?;
    if vars.is_empty() {
        return Err(ParseError::syntax(items[1].pos(), "`forall` without variables"));
    }
    Ok((vars, items[2].clone()))
}

fn arity(expr: &SExpr, items: &[SExpr], n: usize) -> Result<(), ParseError> {
    if items.len() != n + 1 {
        let head = items.first().and_then(SExpr::symbol).unwrap_or("?");
        return Err(ParseError::syntax(
            expr.pos(),
            format!("`{head}` takes {n} argument(s), got {}", items.len().saturating_sub(1)),
        ));
    }
    Ok(())
}

pub(super) fn condition(expr: &SExpr) -> Result<Condition, ParseError> {
    let items = list_at(expr, "a condition")?;
    match expr.head() {
        None if items.is_empty() => Ok(Condition::And(Vec::new())),
        Some("and") => Ok(Condition::And(items[1..].iter().map(condition).collect::<Result<_, _>>()?)),
        Some("not") => {
            arity(expr, items, 1)?;
            Ok(Condition::Not(Box::new(condition(&items[1])?)))
        }
        Some("imply") => {
            arity(expr, items, 2)?;
            Ok(Condition::Imply(Box::new(condition(&items[1])?), Box::new(condition(&items[2])?)))
        }
        Some("forall") => {
            let (vars, body) = binders(expr, items)?;
            let body = condition(&body)?;
            Ok(vars
                .into_iter()
                .rev()
                .fold(body, |acc, v| Condition::Forall(v, Box::new(acc))))
        }
        Some("=") => {
            arity(expr, items, 2)?;
            Ok(Condition::Equals(term(&items[1])?, term(&items[2])?))
        }
        Some(k @ ("or" | "exists" | "when" | "preference" | "either")) => {
            Err(ParseError::unsupported(expr.pos(), k))
        }
        Some(k @ (">" | "<" | ">=" | "<=")) => Err(ParseError::unsupported(expr.pos(), k)),
        _ => atom(expr).map(Condition::Atom),
    }
}

fn effect_of(expr: &SExpr) -> Result<Effect, ParseError> {
    let items = list_at(expr, "an effect")?;
    match expr.head() {
        None if items.is_empty() => Ok(Effect::And(Vec::new())),
        Some("and") => Ok(Effect::And(items[1..].iter().map(effect_of).collect::<Result<_, _>>()?)),
        Some("not") => {
            arity(expr, items, 1)?;
            if items[1].head().is_some_and(|h| matches!(h, "and" | "not" | "forall" | "when")) {
                return Err(ParseError::syntax(items[1].pos(), "`not` in an effect must wrap an atom"));
            }
            Ok(Effect::Del(atom(&items[1])?))
        }
        Some("forall") => {
            let (vars, body) = binders(expr, items)?;
            let body = effect_of(&body)?;
            Ok(vars
                .into_iter()
                .rev()
                .fold(body, |acc, v| Effect::Forall(v, Box::new(acc))))
        }
        Some("when") => {
            arity(expr, items, 2)?;
            Ok(Effect::When(condition(&items[1])?, Box::new(effect_of(&items[2])?)))
        }
        Some(k @ ("increase" | "decrease" | "assign" | "scale-up" | "scale-down")) => {
            Err(ParseError::unsupported(expr.pos(), k))
        }
        _ => atom(expr).map(Effect::Add),
    }
}

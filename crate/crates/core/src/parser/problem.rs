use std::collections::BTreeSet;

use crate::model::{GroundAtom, Problem};

use super::domain::requirements;
use super::sexpr::{read_one, SExpr};
use super::{define_header, list_at, name_at, typed_list, ParseError};

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let top = read_one(text)?;
    let (name, sections) = define_header(&top, "problem")?;
    let mut domain_name = None;
    let mut objects = Vec::new();
    let mut init = BTreeSet::new();
    let mut goal = Vec::new();
    for section in sections {
        let items = list_at(section, "a problem section")?;
        let Some(head) = section.head() else {
            return Err(ParseError::syntax(section.pos(), "empty problem section"));
        };
        let body = &items[1..];
        match head {
            ":domain" => {
                if body.len() != 1 {
                    return Err(ParseError::syntax(section.pos(), "expected `(:domain NAME)`"));
                }
                domain_name = Some(name_at(&body[0])?);
            }
            ":requirements" => {
                requirements(body)?;
            }
            ":objects" => objects.extend(typed_list(body, name_at)?),
            ":init" => {
                for a in body {
                    if let Some(k @ ("not" | "=" | "at")) = a.head() {
                        return Err(ParseError::unsupported(a.pos(), format!("{k} in :init")));
                    }
                    init.insert(ground_atom(a)?);
                }
            }
            ":goal" => {
                if body.len() != 1 {
                    return Err(ParseError::syntax(section.pos(), "expected `(:goal CONDITION)`"));
                }
                goal_atoms(&body[0], &mut goal)?;
            }
            other if other.starts_with(':') => {
                return Err(ParseError::unsupported(section.pos(), other));
            }
            other => {
                return Err(ParseError::syntax(
                    section.pos(),
                    format!("unexpected `{other}` in problem"),
                ))
            }
        }
    }
    let domain_name =
        domain_name.ok_or_else(|| ParseError::syntax(top.pos(), "missing `(:domain NAME)`"))?;
    Ok(Problem { name, domain_name, objects, init, goal })
}

fn ground_atom(expr: &SExpr) -> Result<GroundAtom, ParseError> {
    let items = list_at(expr, "a ground atom")?;
    let Some(head) = items.first() else {
        return Err(ParseError::syntax(expr.pos(), "empty atom"));
    };
    let args = items[1..].iter().map(name_at).collect::<Result<_, _>>()?;
    Ok(GroundAtom::new(name_at(head)?, args))
}

fn goal_atoms(expr: &SExpr, out: &mut Vec<GroundAtom>) -> Result<(), ParseError> {
    let items = list_at(expr, "a goal condition")?;
    match expr.head() {
        None if items.is_empty() => Ok(()),
        Some("and") => items[1..].iter().try_for_each(|c| goal_atoms(c, out)),
        Some(k @ ("or" | "not" | "imply" | "exists" | "forall" | "preference" | "=")) => {
            Err(ParseError::unsupported(expr.pos(), format!("{k} in :goal")))
        }
        _ => {
            let atom = ground_atom(expr)?;
            if !out.contains(&atom) {
                out.push(atom);
            }
            Ok(())
        }
    }
}

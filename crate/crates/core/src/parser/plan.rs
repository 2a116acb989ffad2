use crate::model::{Plan, Step};

use super::sexpr::{read_all, SExpr};
use super::{name_at, ParseError};

/// One `(name arg ...)` step per line; `;` comments and blank lines are skipped.
pub fn parse_plan(text: &str) -> Result<Plan, ParseError> {
    let mut steps = Vec::new();
    let mut last_line = 0;
    for expr in read_all(text)? {
        let pos = expr.pos();
        let items = match &expr {
            SExpr::List(items, _) if !items.is_empty() => items,
            _ => return Err(ParseError::syntax(pos, "malformed plan step, expected `(name args...)`")),
        };
        if pos.line == last_line {
            return Err(ParseError::syntax(pos, "more than one plan step on a line"));
        }
        last_line = pos.line;
        let mut names = Vec::with_capacity(items.len());
        for item in items {
            if item.list().is_some() {
                return Err(ParseError::syntax(item.pos(), "malformed plan step: nested list"));
            }
            names.push(name_at(item)?);
        }
        let name = names.remove(0);
        steps.push(Step::new(name, names));
    }
    Ok(Plan::new(steps))
}

pub fn print_plan(plan: &Plan) -> String {
    let mut out = String::new();
    for step in &plan.steps {
        out.push_str(&step.to_string());
        out.push('\n');
    }
    out
}

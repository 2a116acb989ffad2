//! Reader and printer for the PDDL fragment used by inputs and by the
//! universal domains, plus plan files.

mod domain;
mod machine;
mod plan;
mod printer;
mod problem;
mod sexpr;

use std::fmt;

use thiserror::Error;

use crate::model::Name;
use sexpr::{Pos, SExpr};

pub use domain::{parse_domain, parse_domain_with_diagnostics};
pub use machine::{parse_machine, print_machine};
pub use plan::{parse_plan, print_plan};
pub use printer::{print_condition, print_domain, print_effect, print_problem};
pub use problem::parse_problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unsupported construct `{construct}`")]
    Unsupported { line: usize, col: usize, construct: String },
}

impl ParseError {
    fn syntax(pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: pos.line, col: pos.col, message: message.into() }
    }

    fn unsupported(pos: Pos, construct: impl Into<String>) -> ParseError {
        ParseError::Unsupported { line: pos.line, col: pos.col, construct: construct.into() }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Unsupported { line, .. } => *line,
        }
    }
}

/// A non-fatal remark about accepted but irregular input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

fn name_at(expr: &SExpr) -> Result<Name, ParseError> {
    match expr {
        SExpr::Symbol(s, pos) => {
            Name::new(s).map_err(|_| ParseError::syntax(*pos, format!("invalid name `{s}`")))
        }
        SExpr::List(_, pos) => Err(ParseError::syntax(*pos, "expected a name, found a list")),
    }
}

fn var_at(expr: &SExpr) -> Result<Name, ParseError> {
    match expr {
        SExpr::Symbol(s, pos) => match s.strip_prefix('?') {
            Some(v) => Name::new(v)
                .map_err(|_| ParseError::syntax(*pos, format!("invalid variable `{s}`"))),
            None => Err(ParseError::syntax(*pos, format!("expected a variable, found `{s}`"))),
        },
        SExpr::List(_, pos) => Err(ParseError::syntax(*pos, "expected a variable, found a list")),
    }
}

fn list_at<'a>(expr: &'a SExpr, what: &str) -> Result<&'a [SExpr], ParseError> {
    expr.list().ok_or_else(|| ParseError::syntax(expr.pos(), format!("expected {what}")))
}

/// Parses `(define (KIND name) ...)` and returns the name and sections.
fn define_header<'a>(top: &'a SExpr, kind: &str) -> Result<(Name, &'a [SExpr]), ParseError> {
    let items = list_at(top, "`(define ...)`")?;
    if items.first().and_then(SExpr::symbol) != Some("define") {
        return Err(ParseError::syntax(top.pos(), "expected `(define ...)`"));
    }
    let header = items
        .get(1)
        .ok_or_else(|| ParseError::syntax(top.pos(), format!("missing `({kind} NAME)`")))?;
    let h = list_at(header, &format!("`({kind} NAME)`"))?;
    if h.len() != 2 || h[0].symbol() != Some(kind) {
        return Err(ParseError::syntax(header.pos(), format!("expected `({kind} NAME)`")));
    }
    Ok((name_at(&h[1])?, &items[2..]))
}

/// Splits a PDDL typed list (`x y - t z`) into (item, type) pairs; items
/// after the last `- t` get `object`. `item` parses each entry.
fn typed_list<T>(
    items: &[SExpr],
    item: impl Fn(&SExpr) -> Result<T, ParseError>,
) -> Result<Vec<(T, Name)>, ParseError> {
    let mut out = Vec::new();
    let mut pending = Vec::new();
    let mut i = 0;
    while i < items.len() {
        if items[i].symbol() == Some("-") {
            let ty = items
                .get(i + 1)
                .ok_or_else(|| ParseError::syntax(items[i].pos(), "`-` without a type"))?;
            if ty.head() == Some("either") {
                return Err(ParseError::unsupported(ty.pos(), "either"));
            }
            if pending.is_empty() {
                return Err(ParseError::syntax(items[i].pos(), "`-` without preceding items"));
            }
            let ty = name_at(ty)?;
            out.extend(pending.drain(..).map(|x| (x, ty.clone())));
            i += 2;
        } else {
            pending.push(item(&items[i])?);
            i += 1;
        }
    }
    let object = Name::lit(crate::model::OBJECT_TYPE);
    out.extend(pending.into_iter().map(|x| (x, object.clone())));
    Ok(out)
}

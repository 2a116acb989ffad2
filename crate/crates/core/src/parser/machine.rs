//! Line-oriented Turing machine files.
//!
//! ```text
//! states: q0 q1
//! alphabet: b 0 1        ; first symbol is the blank
//! start: q0
//! accept: q1
//! tape: 2
//! input: 0
//! q0 0 -> q1 1 R
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::model::{Direction, TMachine, TmIdent, Transition};

use super::sexpr::Pos;
use super::ParseError;

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::syntax(Pos { line, col: 1 }, message)
}

fn idents(line: usize, words: &str) -> Result<Vec<TmIdent>, ParseError> {
    words
        .split_whitespace()
        .map(|w| TmIdent::new(w).map_err(|e| err(line, e.to_string())))
        .collect()
}

fn one(line: usize, words: &str) -> Result<TmIdent, ParseError> {
    let mut v = idents(line, words)?;
    if v.len() != 1 {
        return Err(err(line, "expected exactly one identifier"));
    }
    Ok(v.remove(0))
}

pub fn parse_machine(text: &str) -> Result<TMachine, ParseError> {
    let mut states = None;
    let mut alphabet = None;
    let mut start = None;
    let mut accept = None;
    let mut tape_len = None;
    let mut input = Vec::new();
    let mut transitions = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split(';').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            match key.trim().to_ascii_lowercase().as_str() {
                "states" => states = Some(idents(line, value)?),
                "alphabet" => alphabet = Some(idents(line, value)?),
                "start" => start = Some(one(line, value)?),
                "accept" => accept = Some(one(line, value)?),
                "tape" => {
                    let n: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| err(line, "tape length must be a positive integer"))?;
                    tape_len = Some(n);
                }
                "input" => input = idents(line, value)?,
                other => return Err(err(line, format!("unknown key `{other}`"))),
            }
            continue;
        }
        let Some((lhs, rhs)) = content.split_once("->") else {
            return Err(err(line, "expected `key: value` or `q s -> q' s' L|R`"));
        };
        let lhs = idents(line, lhs)?;
        let rhs: Vec<&str> = rhs.split_whitespace().collect();
        if lhs.len() != 2 || rhs.len() != 3 {
            return Err(err(line, "malformed transition, expected `q s -> q' s' L|R`"));
        }
        let dir = match rhs[2] {
            "L" | "l" => Direction::L,
            "R" | "r" => Direction::R,
            d => return Err(err(line, format!("direction must be L or R, got `{d}`"))),
        };
        let t = Transition { next: one(line, rhs[0])?, write: one(line, rhs[1])?, dir };
        let key = (lhs[0].clone(), lhs[1].clone());
        if transitions.insert(key, t).is_some() {
            return Err(err(line, format!("second transition for ({}, {})", lhs[0], lhs[1])));
        }
    }

    let last = text.lines().count().max(1);
    let missing = |what: &str| err(last, format!("missing `{what}:` line"));
    Ok(TMachine {
        states: states.ok_or_else(|| missing("states"))?,
        alphabet: alphabet.ok_or_else(|| missing("alphabet"))?,
        start: start.ok_or_else(|| missing("start"))?,
        accept: accept.ok_or_else(|| missing("accept"))?,
        transitions,
        tape_len: tape_len.ok_or_else(|| missing("tape"))?,
        input,
    })
}

pub fn print_machine(m: &TMachine) -> String {
    let join = |v: &[TmIdent]| v.iter().map(TmIdent::as_str).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "states: {}", join(&m.states)).unwrap();
    writeln!(out, "alphabet: {}", join(&m.alphabet)).unwrap();
    writeln!(out, "start: {}", m.start).unwrap();
    writeln!(out, "accept: {}", m.accept).unwrap();
    writeln!(out, "tape: {}", m.tape_len).unwrap();
    writeln!(out, "input: {}", join(&m.input)).unwrap();
    for ((q, s), t) in &m.transitions {
        let d = match t.dir {
            Direction::L => "L",
            Direction::R => "R",
        };
        writeln!(out, "{q} {s} -> {} {} {d}", t.next, t.write).unwrap();
    }
    out
}

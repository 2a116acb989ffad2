//! Deterministic, space-bounded Turing machines.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use super::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid machine identifier `{0}`: expected letters, digits or `-`")]
pub struct TmIdentError(pub String);

/// A state or tape-symbol identifier. Lowercase alphanumerics and `-`;
/// no `_`, so the generated `h_i_q` style propositions stay unambiguous.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TmIdent(String);

impl TmIdent {
    pub fn new(text: &str) -> Result<TmIdent, TmIdentError> {
        let t = text.to_ascii_lowercase();
        let mut chars = t.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphanumeric())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '-');
        if ok {
            Ok(TmIdent(t))
        } else {
            Err(TmIdentError(text.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TmIdent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for TmIdent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    L,
    R,
}

impl Direction {
    /// Target cell (1-based) for a move from `cell`, if it stays on the tape.
    pub fn target(&self, cell: usize, tape_len: usize) -> Option<usize> {
        match self {
            Direction::L if cell > 1 => Some(cell - 1),
            Direction::R if cell < tape_len => Some(cell + 1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Transition {
    pub next: TmIdent,
    pub write: TmIdent,
    pub dir: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMachine {
    pub states: Vec<TmIdent>,
    /// The first symbol is the blank.
    pub alphabet: Vec<TmIdent>,
    pub start: TmIdent,
    pub accept: TmIdent,
    pub transitions: BTreeMap<(TmIdent, TmIdent), Transition>,
    pub tape_len: usize,
    pub input: Vec<TmIdent>,
}

impl TMachine {
    pub fn blank(&self) -> &TmIdent {
        &self.alphabet[0]
    }

    /// Initial tape contents, blank-padded to `tape_len`.
    pub fn initial_tape(&self) -> Vec<TmIdent> {
        let mut tape = self.input.clone();
        tape.resize(self.tape_len, self.blank().clone());
        tape
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push(Violation::new("machine has no states".into()));
        }
        if self.alphabet.is_empty() {
            out.push(Violation::new("machine has an empty alphabet".into()));
        }
        if self.tape_len == 0 {
            out.push(Violation::new("tape length must be positive".into()));
        }
        if self.input.len() > self.tape_len {
            out.push(Violation::new(format!(
                "input of length {} does not fit a tape of {}",
                self.input.len(),
                self.tape_len
            )));
        }
        let state_ok = |q: &TmIdent| self.states.contains(q);
        let sym_ok = |s: &TmIdent| self.alphabet.contains(s);
        for q in [&self.start, &self.accept] {
            if !state_ok(q) {
                out.push(Violation::new(format!("unknown state `{q}`")));
            }
        }
        for s in &self.input {
            if !sym_ok(s) {
                out.push(Violation::new(format!("input symbol `{s}` not in alphabet")));
            }
        }
        for ((q, s), t) in &self.transitions {
            for x in [q, &t.next] {
                if !state_ok(x) {
                    out.push(Violation::new(format!("transition uses unknown state `{x}`")));
                }
            }
            for x in [s, &t.write] {
                if !sym_ok(x) {
                    out.push(Violation::new(format!("transition uses unknown symbol `{x}`")));
                }
            }
        }
        if self.states.iter().collect::<HashSet<_>>().len() != self.states.len() {
            out.push(Violation::new("duplicate state".into()));
        }
        if self.alphabet.iter().collect::<HashSet<_>>().len() != self.alphabet.len() {
            out.push(Violation::new("duplicate symbol".into()));
        }
        out
    }

    /// Runs the machine directly. Accepts iff the accept state is ever
    /// entered; halting elsewhere, moving off the tape or revisiting a
    /// configuration all reject.
    pub fn accepts(&self) -> bool {
        let mut tape = self.initial_tape();
        let mut state = self.start.clone();
        let mut head = 1usize;
        let mut seen = HashSet::new();
        loop {
            if state == self.accept {
                return true;
            }
            if !seen.insert((state.clone(), head, tape.clone())) {
                return false;
            }
            let symbol = tape[head - 1].clone();
            let Some(t) = self.transitions.get(&(state.clone(), symbol)) else {
                return false;
            };
            let Some(target) = t.dir.target(head, self.tape_len) else {
                return false;
            };
            tape[head - 1] = t.write.clone();
            state = t.next.clone();
            head = target;
        }
    }
}

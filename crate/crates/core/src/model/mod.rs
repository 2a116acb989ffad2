//! Data types shared by the parser, grounder, encoders and executor.

mod ground;
mod lifted;
mod manifest;
mod name;
mod tm;

use std::fmt;

pub use ground::{canonicalize, ActionClash, Bounds, GroundAction, GroundTask, Plan, State, Step};
pub use lifted::{
    ActionSchema, Atom, Condition, Domain, Effect, GroundAtom, PredicateDecl, Problem, Term,
    TypedVar, OBJECT_TYPE,
};
pub use manifest::{ChainOrder, Encoding, Manifest};
pub use name::{Name, NameError};
pub use tm::{Direction, TMachine, TmIdent, TmIdentError, Transition};

/// One broken invariant found by a `check` pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub message: String,
}

impl Violation {
    pub fn new(message: String) -> Violation {
        Violation { message }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

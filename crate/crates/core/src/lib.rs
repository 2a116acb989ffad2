//! Compiling propositional planning tasks into instances of universal
//! PDDL domains, plus the parser, grounder and plan executor around them.
//!
//! ```
//! use universal_pddl::{encoders, equivalence, exec, grounder, parser};
//!
//! let domain = parser::parse_domain(
//!     "(define (domain d) (:predicates (p) (q))
//!        (:action go :parameters () :precondition (p) :effect (and (q) (not (p)))))",
//! ).unwrap();
//! let problem = parser::parse_problem(
//!     "(define (problem x) (:domain d) (:init (p)) (:goal (q)))",
//! ).unwrap();
//! let (task, _) = grounder::ground(&domain, &problem).unwrap();
//! let compiled = encoders::encode_chain(&task).unwrap();
//! let (micro, _) = equivalence::reground(&compiled).unwrap();
//! assert_eq!(exec::bfs_plan(&micro, 1000).plan().unwrap().len(), 4);
//! ```

pub mod encoders;
pub mod equivalence;
pub mod exec;
pub mod grounder;
pub mod model;
pub mod parser;

pub use encoders::{compile, CompiledInstance, EncodeError};
pub use exec::{bfs_plan, validate_plan, BfsOutcome};
pub use grounder::{ground, GroundError};
pub use model::{Bounds, Encoding, GroundTask, Manifest, Name, Plan};
pub use parser::{parse_domain, parse_problem, ParseError};

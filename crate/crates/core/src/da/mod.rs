//! DA bimodules over `B(2)` in matrix notation.

pub mod bimodule;
pub mod check;
pub mod expr;
pub mod grading;
pub mod json;
pub mod schema;

pub use bimodule::{evaluate_delta, ConcreteDABimodule, DABimodule, DAGenerator, TermSource, B2};
pub use check::{check_da_relations, RelationFailure, RelationReport};
pub use expr::{Assignment, Constraint, ExponentExpr};
pub use grading::{infer_bidegrees, infer_concrete_bidegrees, scan_bidegrees, Grading};
pub use schema::{ConcreteTerm, DegreeCap, MonomialPattern, TermSchema};

//! A weakest-precondition engine for a small guarded-command language.
//!
//! Programs are interpreted as Kleisli arrows of the powerset monad
//! (`pow` mode) or the distribution monad (`dist` mode) on the finite
//! space of variable assignments. Preconditions are computed by structural
//! recursion over the syntax and can be compared against the transformer
//! obtained from the denotation of the whole program.

mod check;
mod gen;
mod parse;
mod semantics;
mod state;
mod syntax;

pub use check::{check_healthiness, check_roundtrip, default_probes, InvariantCheck, WpCheck, WpMismatch};
pub use gen::{corpus, random_program, GenConfig};
pub use parse::{parse, parse_expr};
pub use semantics::{
    denote, denote_dist, denote_pow, post_predicate, wp, wp_expectation, wp_set, wp_table, Denotation, Flavor, Mode,
    Predicate, WpTable,
};
pub use state::{eval, StateSpace, Value, STATE_CAP};
pub use syntax::{BinOp, Expr, Program, Stmt, Ty, VarDecl};

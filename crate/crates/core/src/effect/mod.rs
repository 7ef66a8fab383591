//! Exact-rational effect algebras and modules, MV operations, fuzzy
//! predicates and finite distributions.

pub mod algebra;
pub mod distribution;
pub mod mv;
pub mod predicate;
pub mod rat;

pub use algebra::{
    validate_effect_algebra, AxiomResult, EffectAlgebra, EffectReport, FuzzyPredicates,
    PowersetEffect, TruncatedUnitInterval, UnitInterval,
};
pub use distribution::{grid_distributions, Distribution};
pub use mv::{check_mv_identities, mv_ops, MvOps};
pub use predicate::FuzzyPredicate;
pub use rat::{fraction_string, parse_rat, rat, unit_grid, Rat};

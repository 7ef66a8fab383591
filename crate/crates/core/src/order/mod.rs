//! Finite sets, posets, monotone maps, upsets and downsets, and the
//! lattice-theoretic identifications the monads are built from.

pub mod catalog;
pub mod finset;
pub mod literal;
pub mod maps;
pub mod poset;
pub mod structure;

pub use finset::FinSet;
pub use maps::{lattice_element_iso, lattice_element_map, right_adjoint, MonotoneMap, TwoValued};
pub use poset::{
    down_closure, make_poset, subset_label, up_closure, FinPoset, Kind, SubsetLattice, SubsetOf,
    DEFAULT_POSET_CAP,
};
pub use structure::{enumerate_structure_maps, Algebra, Structure, DEFAULT_BUDGET};

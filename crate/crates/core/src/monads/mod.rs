//! Finite instances of the monads: powerset, the neighbourhood family,
//! downsets and the Hoare, Smyth and Plotkin power domains, distributions,
//! finite Giry measures, and the expectation monad.
//!
//! Objects are finite posets; the set-based monads read only the carrier.
//! Multiplication is never exposed separately: `μ = bind(id)`.

use std::fmt::Debug;
use std::hash::Hash;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::order::{enumerate_structure_maps, Algebra, FinPoset, Structure};

pub mod distribution;
pub mod downset;
pub mod expectation;
pub mod giry;
pub mod laws;
pub mod neighbourhood;
pub mod plotkin;
pub mod powerset;
pub mod registry;
pub mod smyth;

pub use distribution::DistributionMonad;
pub use downset::DownsetMonad;
pub use expectation::{sigma, Functional};
pub use giry::{GiryMonad, Measure};
pub use laws::{check_laws, LawConfig, LawFailure, LawReport};
pub use neighbourhood::{cba_collapse_check, CollapseReport, NKind, NeighbourhoodMonad};
pub use plotkin::{PlotkinDualMonad, PlotkinMonad, PlotkinPoint};
pub use powerset::PowersetMonad;
pub use registry::MonadId;
pub use smyth::SmythMonad;

/// Elements of `T(X)`: either all of them, or a probe set when `T(X)` is
/// infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration<E> {
    pub items: Vec<E>,
    pub exhaustive: bool,
}

pub trait Monad: Sync + Send {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> &'static str;

    /// Largest object this instance will build `T(X)` for.
    fn cap(&self) -> usize;

    /// True when objects are plain sets (the order on `X` is ignored).
    fn on_sets(&self) -> bool;

    /// `T(X)`, or a probe set of it.
    fn elements(&self, x: &FinPoset) -> Result<Enumeration<Self::Elem>>;

    fn unit(&self, x: &FinPoset, a: usize) -> Self::Elem;

    /// Kleisli extension of `f: X -> T(Y)` applied to `m ∈ T(X)`.
    fn bind(&self, x: &FinPoset, y: &FinPoset, f: &[Self::Elem], m: &Self::Elem) -> Self::Elem;

    /// The order on `T(X)`.
    fn leq(&self, x: &FinPoset, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Whether `e` is a well-formed element of `T(X)`.
    fn contains(&self, x: &FinPoset, e: &Self::Elem) -> bool;

    fn render(&self, x: &FinPoset, e: &Self::Elem) -> String;

    fn to_json(&self, x: &FinPoset, e: &Self::Elem) -> Value;

    fn check_cap(&self, x: &FinPoset) -> Result<()> {
        if x.len() > self.cap() {
            Err(Error::too_large(
                format!("{} object", self.name()),
                x.len() as u128,
                self.cap() as u128,
            ))
        } else {
            Ok(())
        }
    }

    /// `μ = bind(id)` on `T(T(X))`, with `T(X)` given by its elements.
    fn join(&self, x: &FinPoset, tx: &[Self::Elem], tx_poset: &FinPoset, mm: &Self::Elem) -> Self::Elem {
        self.bind(tx_poset, x, tx, mm)
    }
}

/// `T(X)` with its order, as a poset labelled by rendered elements.
pub fn as_poset<M: Monad>(m: &M, x: &FinPoset, items: &[M::Elem]) -> Result<FinPoset> {
    let labels = items.iter().map(|e| m.render(x, e)).collect();
    FinPoset::from_leq(labels, |a, b| m.leq(x, &items[a], &items[b]))
}

/// The Kleisli homset `X -> T(Y)` over a fixed list of targets: either an
/// explicit list of monotone arrows, or (for sets) every function, decoded
/// from a mixed-radix index.
#[derive(Clone, Debug)]
pub struct ArrowSpace {
    dom_len: usize,
    targets: usize,
    explicit: Option<Vec<Vec<usize>>>,
}

impl ArrowSpace {
    /// Arrows from `x` into the enumerated `T(Y)`; monotone maps when `x`
    /// carries a nontrivial order the monad respects.
    pub fn new<M: Monad>(
        m: &M,
        x: &FinPoset,
        y: &FinPoset,
        ty: &[M::Elem],
        budget: u64,
    ) -> Result<Self> {
        if m.on_sets() || x.is_discrete() {
            return Ok(ArrowSpace {
                dom_len: x.len(),
                targets: ty.len(),
                explicit: None,
            });
        }
        let cod = as_poset(m, y, ty)?;
        let arrows = enumerate_structure_maps(
            &Algebra::new(x.clone()),
            &Algebra::new(cod),
            Structure::Monotone,
            budget,
        )?;
        Ok(ArrowSpace {
            dom_len: x.len(),
            targets: ty.len(),
            explicit: Some(arrows),
        })
    }

    pub fn count(&self) -> u128 {
        match &self.explicit {
            Some(list) => list.len() as u128,
            None => (self.targets as u128)
                .checked_pow(self.dom_len as u32)
                .unwrap_or(u128::MAX),
        }
    }

    /// The arrow with the given index (`< count()`), as target indices.
    pub fn get(&self, mut index: u128) -> Vec<usize> {
        match &self.explicit {
            Some(list) => list[index as usize].clone(),
            None => (0..self.dom_len)
                .map(|_| {
                    let t = self.targets as u128;
                    let d = (index % t) as usize;
                    index /= t;
                    d
                })
                .collect(),
        }
    }
}

/// Resolves arrow indices to elements.
pub fn resolve<E: Clone>(targets: &[E], arrow: &[usize]) -> Vec<E> {
    arrow.iter().map(|&i| targets[i].clone()).collect()
}

//! The sets/posets adjunction through `2` and the neighbourhood-family
//! correspondences built on it.
//!
//! For a set `X` and a poset `Y`, functions `X -> Up(Y)` match monotone
//! maps `Y -> P(X)`. Taking `Y = P(Y')` gives Kleisli arrows of the
//! monotone neighbourhood monad against monotone maps `P(Y') -> P(X)`; the
//! full neighbourhood monad, filters and ultrafilters use the same
//! formulas with no order condition, meet+top and Boolean maps.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::monads::{NKind, NeighbourhoodMonad};
use crate::order::{FinPoset, Structure, SubsetLattice};

use super::{Correspondence, CorrespondenceId, PredSpace};

/// `g: X -> Up(Y)` to `ḡ: Y -> P(X)`, `ḡ(y) = {x | y ∈ g(x)}`.
pub fn nbhd_set_to_poset(x_len: usize, y: &FinPoset, g: &[ElemSet]) -> Result<Vec<ElemSet>> {
    if g.len() != x_len {
        return Err(Error::CarrierMismatch("one upset per point of X".into()));
    }
    if let Some(x) = (0..x_len).find(|&x| !g[x].is_subset(&y.full_set()) || !y.is_upset(&g[x])) {
        return Err(Error::SideConditionViolated(format!("g({x}) is not an upset of Y")));
    }
    let f: Vec<ElemSet> = (0..y.len())
        .map(|b| (0..x_len).filter(|&x| g[x].contains(b)).collect())
        .collect();
    debug_assert!(is_monotone(y, &f));
    Ok(f)
}

/// Monotone `f: Y -> P(X)` to `f̄: X -> Up(Y)`, `f̄(x) = {y | x ∈ f(y)}`.
pub fn nbhd_poset_to_set(x_len: usize, y: &FinPoset, f: &[ElemSet]) -> Result<Vec<ElemSet>> {
    if f.len() != y.len() {
        return Err(Error::CarrierMismatch("one subset per point of Y".into()));
    }
    let full = ElemSet::full(x_len);
    if f.iter().any(|s| !s.is_subset(&full)) {
        return Err(Error::SideConditionViolated("image outside P(X)".into()));
    }
    if !is_monotone(y, f) {
        return Err(Error::SideConditionViolated("f is not monotone".into()));
    }
    let g: Vec<ElemSet> = (0..x_len)
        .map(|x| (0..y.len()).filter(|&b| f[b].contains(x)).collect())
        .collect();
    debug_assert!(g.iter().all(|u| y.is_upset(u)));
    Ok(g)
}

fn is_monotone(y: &FinPoset, f: &[ElemSet]) -> bool {
    (0..y.len()).all(|a| y.up_of(a).iter().all(|b| f[a].is_subset(&f[b])))
}

fn mask(s: &ElemSet) -> usize {
    s.to_mask() as usize
}

#[derive(Clone, Debug)]
pub struct NbhdCorrespondence {
    pub monad: NeighbourhoodMonad,
}

impl NbhdCorrespondence {
    pub fn new(kind: NKind) -> Self {
        NbhdCorrespondence {
            monad: NeighbourhoodMonad::new(kind),
        }
    }
}

impl Correspondence for NbhdCorrespondence {
    type M = NeighbourhoodMonad;
    type Pred = ElemSet;

    fn id(&self) -> CorrespondenceId {
        match self.monad.kind {
            NKind::Neighbourhood => CorrespondenceId::Neighbourhood,
            NKind::MonotoneNeighbourhood => CorrespondenceId::MonotoneNbhd,
            NKind::Filter => CorrespondenceId::Filter,
            NKind::Ultrafilter => CorrespondenceId::Ultrafilter,
        }
    }

    fn monad(&self) -> &NeighbourhoodMonad {
        &self.monad
    }

    fn structure(&self) -> Structure {
        match self.monad.kind {
            NKind::Neighbourhood => Structure::Any,
            NKind::MonotoneNeighbourhood => Structure::Monotone,
            NKind::Filter => Structure::MeetTop,
            NKind::Ultrafilter => Structure::Boolean,
        }
    }

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<ElemSet>> {
        PredSpace::from_subsets(&SubsetLattice::powerset(&x.carrier()))
    }

    fn pred_json(&self, x: &FinPoset, p: &ElemSet) -> serde_json::Value {
        super::subset_json(x, p)
    }

    /// `ḡ(B) = {x | B ∈ g(x)}`.
    fn transform(&self, x: &FinPoset, _y: &FinPoset, g: &[ElemSet], v: &ElemSet) -> ElemSet {
        (0..x.len()).filter(|&a| g[a].contains(mask(v))).collect()
    }

    /// `f̄(x) = {B | x ∈ f(B)}`.
    fn transpose_back(
        &self,
        x: &FinPoset,
        _y: &FinPoset,
        px: &PredSpace<ElemSet>,
        py: &PredSpace<ElemSet>,
        t: &[usize],
    ) -> Result<Vec<ElemSet>> {
        Ok((0..x.len())
            .map(|a| {
                (0..py.len())
                    .filter(|&j| px.member(t[j]).contains(a))
                    .map(|j| mask(py.member(j)))
                    .collect()
            })
            .collect())
    }

    fn rejection(&self, message: String) -> Error {
        Error::SideConditionViolated(message)
    }
}

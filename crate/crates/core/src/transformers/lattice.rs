//! Transposes into complete lattices of subsets: the box transformer for
//! the powerset monad, the diamond transformer for downsets, and the
//! Hoare and Smyth power domains over open-set lattices.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::monads::{DownsetMonad, PowersetMonad, SmythMonad};
use crate::order::{FinPoset, Structure, SubsetLattice};

use super::{Correspondence, CorrespondenceId, Elem, PredSpace};

/// `wp(g, A) = {x | g(x) ⊆ A}`.
pub fn box_wp(g: &[ElemSet], a: &ElemSet) -> ElemSet {
    (0..g.len()).filter(|&x| g[x].is_subset(a)).collect()
}

/// `g◇(V) = {x | g(x) ∩ V ≠ ∅}`.
pub fn diamond_wp(g: &[ElemSet], v: &ElemSet) -> ElemSet {
    (0..g.len()).filter(|&x| g[x].intersects(v)).collect()
}

/// `ḡ(a) = {x | g(x) ≤ a}` for `g: X -> L` into a finite lattice.
pub fn box_forward_lattice(l: &FinPoset, g: &[usize]) -> Vec<ElemSet> {
    (0..l.len())
        .map(|a| (0..g.len()).filter(|&x| l.leq(g[x], a)).collect())
        .collect()
}

/// `f̄(x) = ⋀{a | x ∈ f(a)}` for a meet-preserving `f: L -> P(X)`.
pub fn box_backward_lattice(l: &FinPoset, x_len: usize, f: &[ElemSet]) -> Result<Vec<usize>> {
    if !l.is_lattice() {
        return Err(Error::NotALattice(format!("{} elements", l.len())));
    }
    if f.len() != l.len() {
        return Err(Error::CarrierMismatch("map is not defined on all of L".into()));
    }
    let full = ElemSet::full(x_len);
    let top = l.top().expect("lattice");
    if f[top] != full {
        return Err(Error::NotMeetPreserving("top is not sent to X".into()));
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            let m = l.meet(a, b).expect("lattice");
            if f[m] != f[a].intersection(&f[b]) {
                return Err(Error::NotMeetPreserving(format!(
                    "f({} ∧ {}) ≠ f({}) ∩ f({})",
                    l.label(a),
                    l.label(b),
                    l.label(a),
                    l.label(b)
                )));
            }
        }
    }
    Ok((0..x_len)
        .map(|x| {
            let s: ElemSet = (0..l.len()).filter(|&a| f[a].contains(x)).collect();
            l.meet_of(&s).expect("lattice")
        })
        .collect())
}

fn powerset_space(x: &FinPoset) -> Result<PredSpace<ElemSet>> {
    PredSpace::from_subsets(&SubsetLattice::powerset(&x.carrier()))
}

fn opens_space(x: &FinPoset) -> Result<PredSpace<ElemSet>> {
    PredSpace::from_subsets(&x.upsets()?)
}

/// `P` on sets against meet-preserving maps `P(Y) -> P(X)`.
#[derive(Clone, Debug, Default)]
pub struct BoxCorrespondence {
    pub monad: PowersetMonad,
}

impl Correspondence for BoxCorrespondence {
    type M = PowersetMonad;
    type Pred = ElemSet;

    fn id(&self) -> CorrespondenceId {
        CorrespondenceId::Box
    }

    fn monad(&self) -> &PowersetMonad {
        &self.monad
    }

    fn structure(&self) -> Structure {
        Structure::MeetPreserving
    }

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<ElemSet>> {
        powerset_space(x)
    }

    fn pred_json(&self, x: &FinPoset, p: &ElemSet) -> serde_json::Value {
        super::subset_json(x, p)
    }

    fn transform(&self, _x: &FinPoset, _y: &FinPoset, g: &[ElemSet], v: &ElemSet) -> ElemSet {
        box_wp(g, v)
    }

    fn transpose_back(
        &self,
        x: &FinPoset,
        y: &FinPoset,
        px: &PredSpace<ElemSet>,
        py: &PredSpace<ElemSet>,
        t: &[usize],
    ) -> Result<Vec<ElemSet>> {
        Ok((0..x.len())
            .map(|a| {
                (0..py.len())
                    .filter(|&j| px.member(t[j]).contains(a))
                    .fold(y.full_set(), |acc, j| acc.intersection(py.member(j)))
            })
            .collect())
    }

    fn rejection(&self, message: String) -> Error {
        Error::NotMeetPreserving(message)
    }
}

/// `f̄(x) = ⋂{U ∈ Dwn(Y) | x ∉ f(¬U)}`, with `¬U` ranging over the upsets.
fn diamond_back(x: &FinPoset, y: &FinPoset, px: &PredSpace<ElemSet>, py: &PredSpace<ElemSet>, t: &[usize]) -> Vec<ElemSet> {
    (0..x.len())
        .map(|a| {
            (0..py.len())
                .filter(|&j| !px.member(t[j]).contains(a))
                .fold(y.full_set(), |acc, j| acc.intersection(&py.member(j).complement(y.len())))
        })
        .collect()
}

/// Monotone `X -> Dwn(Y)` against join-preserving `Up(Y) -> Up(X)`.
#[derive(Clone, Debug)]
pub struct DiamondCorrespondence {
    pub monad: DownsetMonad,
}

impl Default for DiamondCorrespondence {
    fn default() -> Self {
        DiamondCorrespondence {
            monad: DownsetMonad::downsets(),
        }
    }
}

impl Correspondence for DiamondCorrespondence {
    type M = DownsetMonad;
    type Pred = ElemSet;

    fn id(&self) -> CorrespondenceId {
        CorrespondenceId::Diamond
    }

    fn monad(&self) -> &DownsetMonad {
        &self.monad
    }

    fn structure(&self) -> Structure {
        Structure::JoinPreserving
    }

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<ElemSet>> {
        opens_space(x)
    }

    fn pred_json(&self, x: &FinPoset, p: &ElemSet) -> serde_json::Value {
        super::subset_json(x, p)
    }

    fn transform(&self, _x: &FinPoset, _y: &FinPoset, g: &[ElemSet], v: &ElemSet) -> ElemSet {
        diamond_wp(g, v)
    }

    fn transpose_back(
        &self,
        x: &FinPoset,
        y: &FinPoset,
        px: &PredSpace<ElemSet>,
        py: &PredSpace<ElemSet>,
        t: &[usize],
    ) -> Result<Vec<Elem<Self>>> {
        Ok(diamond_back(x, y, px, py, t))
    }

    fn rejection(&self, message: String) -> Error {
        if message == "not monotone" {
            Error::NotMonotone(message)
        } else {
            Error::NotJoinPreserving(message)
        }
    }
}

/// Hoare power domain against join+top-preserving `O(Y) -> O(X)`.
#[derive(Clone, Debug)]
pub struct HoareCorrespondence {
    pub monad: DownsetMonad,
}

impl Default for HoareCorrespondence {
    fn default() -> Self {
        HoareCorrespondence {
            monad: DownsetMonad::hoare(),
        }
    }
}

impl Correspondence for HoareCorrespondence {
    type M = DownsetMonad;
    type Pred = ElemSet;

    fn id(&self) -> CorrespondenceId {
        CorrespondenceId::Hoare
    }

    fn monad(&self) -> &DownsetMonad {
        &self.monad
    }

    fn structure(&self) -> Structure {
        Structure::JoinTop
    }

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<ElemSet>> {
        opens_space(x)
    }

    fn pred_json(&self, x: &FinPoset, p: &ElemSet) -> serde_json::Value {
        super::subset_json(x, p)
    }

    fn transform(&self, _x: &FinPoset, _y: &FinPoset, g: &[ElemSet], v: &ElemSet) -> ElemSet {
        diamond_wp(g, v)
    }

    fn transpose_back(
        &self,
        x: &FinPoset,
        y: &FinPoset,
        px: &PredSpace<ElemSet>,
        py: &PredSpace<ElemSet>,
        t: &[usize],
    ) -> Result<Vec<ElemSet>> {
        Ok(diamond_back(x, y, px, py, t))
    }
}

/// Smyth power domain against preframe+0 maps `O(Y) -> O(X)`, in the
/// upset presentation: `Pred(g)(V) = {x | K_x ⊆ V}` and
/// `f̄(x) = ⋂{V | x ∈ f(V)}`.
#[derive(Clone, Debug, Default)]
pub struct SmythCorrespondence {
    pub monad: SmythMonad,
}

impl Correspondence for SmythCorrespondence {
    type M = SmythMonad;
    type Pred = ElemSet;

    fn id(&self) -> CorrespondenceId {
        CorrespondenceId::Smyth
    }

    fn monad(&self) -> &SmythMonad {
        &self.monad
    }

    fn structure(&self) -> Structure {
        Structure::PreframeZero
    }

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<ElemSet>> {
        opens_space(x)
    }

    fn pred_json(&self, x: &FinPoset, p: &ElemSet) -> serde_json::Value {
        super::subset_json(x, p)
    }

    fn transform(&self, _x: &FinPoset, _y: &FinPoset, g: &[ElemSet], v: &ElemSet) -> ElemSet {
        crate::monads::smyth::smyth_pred_upsets(g, v)
    }

    fn transpose_back(
        &self,
        x: &FinPoset,
        y: &FinPoset,
        px: &PredSpace<ElemSet>,
        py: &PredSpace<ElemSet>,
        t: &[usize],
    ) -> Result<Vec<ElemSet>> {
        Ok((0..x.len())
            .map(|a| {
                (0..py.len())
                    .filter(|&j| px.member(t[j]).contains(a))
                    .fold(y.full_set(), |acc, j| acc.intersection(py.member(j)))
            })
            .collect())
    }
}

//! Predicate-transformer correspondences.
//!
//! A [`Correspondence`] pairs a monad `T` with a predicate functor `Pred`
//! and the structure its transformers preserve. The forward transpose
//! sends a Kleisli arrow `g: X -> T(Y)` to a map `Pred(Y) -> Pred(X)`; the
//! backward transpose recovers the arrow. Both directions verify their
//! inputs and outputs, and [`round_trip`] / [`certify`] check the
//! bijection by enumeration.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::monads::{resolve, ArrowSpace, Monad};
use crate::order::{enumerate_structure_maps, Algebra, FinPoset, Structure, SubsetLattice, DEFAULT_BUDGET};

pub mod expectation;
pub mod lattice;
pub mod nbhd;
pub mod plotkin;
pub mod registry;

pub use expectation::{expectation_kleisli, expectation_pred, PredicateTransformer};
pub use lattice::{
    box_backward_lattice, box_forward_lattice, box_wp, diamond_wp, BoxCorrespondence,
    DiamondCorrespondence, HoareCorrespondence, SmythCorrespondence,
};
pub use nbhd::{nbhd_poset_to_set, nbhd_set_to_poset, NbhdCorrespondence};
pub use plotkin::{
    plotkin_hom_backward, plotkin_hom_forward, three_backward, three_forward, FramePair, PlotkinHomSetting,
    ThreeCorrespondence,
};
pub use registry::{certify_by_id, round_trip_by_id, transpose_json, CorrespondenceId, Direction};

/// `Pred(X)`: its elements, indexed, and the algebra transformers act on.
#[derive(Clone, Debug)]
pub struct PredSpace<P> {
    members: Vec<P>,
    index: HashMap<P, usize>,
    algebra: Algebra,
}

impl<P: Clone + Eq + Hash> PredSpace<P> {
    /// `members[i]` must be element `i` of the algebra.
    pub fn new(members: Vec<P>, algebra: Algebra) -> Self {
        let index = members.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        PredSpace {
            members,
            index,
            algebra,
        }
    }

    pub fn members(&self) -> &[P] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &P {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, p: &P) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
}

impl PredSpace<ElemSet> {
    pub fn from_subsets(lattice: &SubsetLattice) -> Result<Self> {
        Ok(PredSpace::new(
            lattice.members().to_vec(),
            Algebra::lattice(lattice.poset().clone())?,
        ))
    }
}

/// A subset as the list of its element labels.
pub fn subset_json(x: &FinPoset, s: &ElemSet) -> Value {
    json!(s.iter().map(|i| x.label(i)).collect::<Vec<_>>())
}

pub type Elem<C> = <<C as Correspondence>::M as Monad>::Elem;

pub trait Correspondence: Sync + Send {
    type M: Monad;
    type Pred: Clone + Eq + Hash + Debug + Send + Sync;

    fn id(&self) -> CorrespondenceId;

    fn monad(&self) -> &Self::M;

    /// The structure a transformer `Pred(Y) -> Pred(X)` must preserve.
    fn structure(&self) -> Structure;

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<Self::Pred>>;

    /// `Pred(g)(v)`.
    fn transform(&self, x: &FinPoset, y: &FinPoset, g: &[Elem<Self>], v: &Self::Pred) -> Self::Pred;

    /// The Kleisli arrow of a transformer given by its graph. The
    /// structure of `t` has already been checked.
    fn transpose_back(
        &self,
        x: &FinPoset,
        y: &FinPoset,
        px: &PredSpace<Self::Pred>,
        py: &PredSpace<Self::Pred>,
        t: &[usize],
    ) -> Result<Vec<Elem<Self>>>;

    /// A predicate as JSON, for reports and the command line.
    fn pred_json(&self, x: &FinPoset, p: &Self::Pred) -> Value;

    /// Error for a transformer that fails the structure check.
    fn rejection(&self, message: String) -> Error {
        Error::StructureNotPreserved(message)
    }

    /// The object as this correspondence reads it (plain sets forget order).
    fn object(&self, x: &FinPoset) -> FinPoset {
        if self.monad().on_sets() {
            FinPoset::discrete(&x.carrier())
        } else {
            x.clone()
        }
    }
}

/// Forward transpose as a graph `Pred(Y) -> Pred(X)`, with the arrow and
/// the output structure both verified.
pub fn forward<C: Correspondence>(
    c: &C,
    x: &FinPoset,
    y: &FinPoset,
    px: &PredSpace<C::Pred>,
    py: &PredSpace<C::Pred>,
    g: &[Elem<C>],
) -> Result<Vec<usize>> {
    check_arrow(c, x, y, g)?;
    let graph = py
        .members()
        .iter()
        .map(|v| {
            let out = c.transform(x, y, g, v);
            px.index_of(&out)
                .ok_or_else(|| Error::StructureNotPreserved(format!("{out:?} is not a predicate on X")))
        })
        .collect::<Result<Vec<_>>>()?;
    c.structure()
        .check(py.algebra(), px.algebra(), &graph)
        .map_err(Error::StructureNotPreserved)?;
    Ok(graph)
}

/// Backward transpose of a transformer graph, rejecting transformers that
/// do not preserve the structure.
pub fn backward<C: Correspondence>(
    c: &C,
    x: &FinPoset,
    y: &FinPoset,
    px: &PredSpace<C::Pred>,
    py: &PredSpace<C::Pred>,
    t: &[usize],
) -> Result<Vec<Elem<C>>> {
    c.structure()
        .check(py.algebra(), px.algebra(), t)
        .map_err(|m| c.rejection(m))?;
    let g = c.transpose_back(x, y, px, py, t)?;
    check_arrow(c, x, y, &g)?;
    Ok(g)
}

fn check_arrow<C: Correspondence>(c: &C, x: &FinPoset, y: &FinPoset, g: &[Elem<C>]) -> Result<()> {
    let m = c.monad();
    if g.len() != x.len() {
        return Err(Error::CarrierMismatch(format!(
            "arrow has {} images for {} points",
            g.len(),
            x.len()
        )));
    }
    if let Some(bad) = g.iter().find(|e| !m.contains(y, e)) {
        return Err(Error::InvalidElement(m.render(y, bad)));
    }
    if !m.on_sets() {
        for a in 0..x.len() {
            for b in x.up_of(a).iter() {
                if !m.leq(y, &g[a], &g[b]) {
                    return Err(Error::NotMonotone(format!(
                        "{} ≤ {} but images are not ordered",
                        x.label(a),
                        x.label(b)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Every Kleisli arrow `X -> T(Y)`, when `T(Y)` is enumerable and the
/// homset fits the budget.
pub fn kleisli_arrows<M: Monad>(m: &M, x: &FinPoset, y: &FinPoset, budget: u64) -> Result<(Vec<M::Elem>, ArrowSpace)> {
    let ty = m.elements(y)?;
    if !ty.exhaustive {
        return Err(Error::too_large(
            format!("{}: T(Y) is not enumerable", m.name()),
            u128::MAX,
            budget as u128,
        ));
    }
    let space = ArrowSpace::new(m, x, y, &ty.items, budget)?;
    if space.count() > budget as u128 {
        return Err(Error::too_large("Kleisli homset", space.count(), budget as u128));
    }
    Ok((ty.items, space))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripReport {
    pub correspondence: String,
    pub arrows: usize,
    pub transformers: usize,
    /// Seed used when arrows were sampled.
    pub seed: Option<u64>,
    pub mismatches: Vec<String>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn arrow_round_trip<C: Correspondence>(
    c: &C,
    x: &FinPoset,
    y: &FinPoset,
    px: &PredSpace<C::Pred>,
    py: &PredSpace<C::Pred>,
    g: &[Elem<C>],
) -> Option<String> {
    let t = match forward(c, x, y, px, py, g) {
        Ok(t) => t,
        Err(e) => return Some(format!("forward failed on {g:?}: {e}")),
    };
    match backward(c, x, y, px, py, &t) {
        Ok(back) if back == g => None,
        Ok(back) => Some(format!("backward(forward({g:?})) = {back:?}")),
        Err(e) => Some(format!("backward failed on forward({g:?}): {e}")),
    }
}

fn transformer_round_trip<C: Correspondence>(
    c: &C,
    x: &FinPoset,
    y: &FinPoset,
    px: &PredSpace<C::Pred>,
    py: &PredSpace<C::Pred>,
    t: &[usize],
) -> Option<String> {
    let g = match backward(c, x, y, px, py, t) {
        Ok(g) => g,
        Err(e) => return Some(format!("backward failed on {t:?}: {e}")),
    };
    match forward(c, x, y, px, py, &g) {
        Ok(f) if f == t => None,
        Ok(f) => Some(format!("forward(backward({t:?})) = {f:?}")),
        Err(e) => Some(format!("forward failed on backward({t:?}): {e}")),
    }
}

/// Both composites on every Kleisli arrow and every structure-preserving
/// transformer between the two objects.
pub fn round_trip<C: Correspondence>(c: &C, x: &FinPoset, y: &FinPoset, strategy: Strategy) -> Result<RoundTripReport> {
    let (x, y) = (c.object(x), c.object(y));
    let (px, py) = (c.pred_space(&x)?, c.pred_space(&y)?);
    let (ty, space) = kleisli_arrows(c.monad(), &x, &y, DEFAULT_BUDGET)?;
    let arrows = space.count() as usize;
    let mut mismatches: Vec<String> = exec::map_range(strategy, 0..arrows, |i| {
        let g = resolve(&ty, &space.get(i as u128));
        arrow_round_trip(c, &x, &y, &px, &py, &g)
    })
    .into_iter()
    .flatten()
    .collect();
    let transformers = enumerate_structure_maps(py.algebra(), px.algebra(), c.structure(), DEFAULT_BUDGET)?;
    mismatches.extend(
        exec::map_slice(strategy, &transformers, |t| transformer_round_trip(c, &x, &y, &px, &py, t))
            .into_iter()
            .flatten(),
    );
    Ok(RoundTripReport {
        correspondence: c.id().name().to_string(),
        arrows,
        transformers: transformers.len(),
        seed: None,
        mismatches,
    })
}

/// Both composites on seeded random arrows. Every transformer is the
/// forward image of some arrow, so the second composite runs on those images.
pub fn round_trip_sampled<C: Correspondence>(
    c: &C,
    x: &FinPoset,
    y: &FinPoset,
    samples: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<RoundTripReport> {
    let (x, y) = (c.object(x), c.object(y));
    let (px, py) = (c.pred_space(&x)?, c.pred_space(&y)?);
    let (ty, space) = kleisli_arrows(c.monad(), &x, &y, u64::MAX)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<u128> = (0..samples).map(|_| rng.gen_range(0..space.count())).collect();
    let mismatches = exec::map_slice(strategy, &picks, |&i| {
        let g = resolve(&ty, &space.get(i));
        if let Some(m) = arrow_round_trip(c, &x, &y, &px, &py, &g) {
            return Some(m);
        }
        let t = forward(c, &x, &y, &px, &py, &g).ok()?;
        transformer_round_trip(c, &x, &y, &px, &py, &t)
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(RoundTripReport {
        correspondence: c.id().name().to_string(),
        arrows: samples,
        transformers: samples,
        seed: Some(seed),
        mismatches,
    })
}

/// Outcome of matching Kleisli arrows with transformers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub correspondence: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub kleisli_count: usize,
    pub transformer_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub bijection: bool,
    pub counterexample: Option<String>,
}

impl CertReport {
    pub fn to_json(&self) -> Value {
        json!({
            "correspondence": self.correspondence,
            "x": self.x,
            "y": self.y,
            "kleisli_count": self.kleisli_count,
            "transformer_count": self.transformer_count,
            "injective": self.injective,
            "surjective": self.surjective,
            "bijection": self.bijection,
            "counterexample": self.counterexample,
        })
    }
}

/// Enumerates `Kl(X, Y)` and the structure-preserving maps
/// `Pred(Y) -> Pred(X)`, transposes every arrow, and checks that the
/// transpose is a bijection between the two lists.
pub fn certify<C: Correspondence>(c: &C, x: &FinPoset, y: &FinPoset, strategy: Strategy) -> Result<CertReport> {
    let (x, y) = (c.object(x), c.object(y));
    let (px, py) = (c.pred_space(&x)?, c.pred_space(&y)?);
    let (ty, space) = kleisli_arrows(c.monad(), &x, &y, DEFAULT_BUDGET)?;
    let kleisli_count = space.count() as usize;
    let transformers = enumerate_structure_maps(py.algebra(), px.algebra(), c.structure(), DEFAULT_BUDGET)?;
    let images = exec::map_range(strategy, 0..kleisli_count, |i| {
        forward(c, &x, &y, &px, &py, &resolve(&ty, &space.get(i as u128)))
    });
    let mut counterexample = None;
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut injective = true;
    for (i, image) in images.into_iter().enumerate() {
        let image = image?;
        if let Some(&j) = seen.get(&image) {
            injective = false;
            counterexample.get_or_insert_with(|| format!("arrows #{j} and #{i} have the same transformer"));
        } else {
            seen.insert(image, i);
        }
    }
    let missed = transformers.iter().position(|t| !seen.contains_key(t));
    if let Some(k) = missed {
        counterexample.get_or_insert_with(|| format!("transformer {:?} is no arrow's transpose", transformers[k]));
    }
    let surjective = missed.is_none();
    Ok(CertReport {
        correspondence: c.id().name().to_string(),
        x: x.labels().to_vec(),
        y: y.labels().to_vec(),
        kleisli_count,
        transformer_count: transformers.len(),
        injective,
        surjective,
        bijection: injective && surjective && kleisli_count == transformers.len(),
        counterexample,
    })
}

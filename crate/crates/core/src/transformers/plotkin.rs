//! Dualizing with `3`: maps into `3` against lens pairs, Plotkin
//! homomorphisms `X⋉X -> Y⋉Y` against frame-map pairs, and the Plotkin
//! power domain against Plotkin homomorphisms `Dcpo(Y,3) -> Dcpo(X,3)`.

use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::monads::{PlotkinDualMonad, PlotkinMonad, PlotkinPoint};
use crate::order::{enumerate_structure_maps, Algebra, FinPoset, Structure, SubsetLattice, DEFAULT_BUDGET};
use crate::three::{lens_of, map_of, LensPair, Three, ThreeMaps};

use super::{Correspondence, CorrespondenceId, PredSpace, RoundTripReport};

/// `f ↦ ({x | f(x) ≠ 0}, {x | f(x) = 1})` for monotone `f: X -> 3`.
pub fn three_forward(x: &FinPoset, f: &[Three]) -> Result<LensPair> {
    if f.len() != x.len() {
        return Err(Error::CarrierMismatch(format!("{} values for {} points", f.len(), x.len())));
    }
    for a in 0..x.len() {
        if let Some(b) = x.up_of(a).iter().find(|&b| f[a] > f[b]) {
            return Err(Error::NotMonotone(format!("{} ≤ {} but {} > {}", x.label(a), x.label(b), f[a], f[b])));
        }
    }
    Ok(lens_of(f))
}

/// The map that is `1` on `U₂`, `⋈` on `U₁ \ U₂` and `0` elsewhere.
pub fn three_backward(x: &FinPoset, lens: &LensPair) -> Result<Vec<Three>> {
    let lens = LensPair::new(x, lens.outer.clone(), lens.inner.clone())?;
    Ok(map_of(x.len(), &lens))
}

/// A pair of maps between open-set frames, `g₁` join+top and `g₂`
/// preframe+0, as graphs over the upset enumerations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramePair {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// The frames `O(P)`, `O(Q)` and the Plotkin algebras `O(P)⋉O(P)`,
/// `O(Q)⋉O(Q)`, the latter presented as monotone maps into `3`.
#[derive(Clone, Debug)]
pub struct PlotkinHomSetting {
    pub p: FinPoset,
    pub q: FinPoset,
    op: SubsetLattice,
    oq: SubsetLattice,
    op_alg: Algebra,
    oq_alg: Algebra,
    mp: ThreeMaps,
    mq: ThreeMaps,
}

impl PlotkinHomSetting {
    pub fn new(p: &FinPoset, q: &FinPoset) -> Result<Self> {
        let (op, oq) = (p.upsets()?, q.upsets()?);
        Ok(PlotkinHomSetting {
            p: p.clone(),
            q: q.clone(),
            op_alg: Algebra::lattice(op.poset().clone())?,
            oq_alg: Algebra::lattice(oq.poset().clone())?,
            op,
            oq,
            mp: ThreeMaps::new(p)?,
            mq: ThreeMaps::new(q)?,
        })
    }

    pub fn source(&self) -> &ThreeMaps {
        &self.mp
    }

    pub fn target(&self) -> &ThreeMaps {
        &self.mq
    }

    fn lens_index(&self, maps: &ThreeMaps, x: &FinPoset, outer: &ElemSet, inner: &ElemSet) -> usize {
        let lens = LensPair {
            outer: outer.clone(),
            inner: inner.clone(),
        };
        maps.index_of(&map_of(x.len(), &lens)).expect("lens pairs are monotone maps")
    }

    fn check_pair(&self, pair: &FramePair) -> Result<()> {
        Structure::JoinTop
            .check(&self.op_alg, &self.oq_alg, &pair.first)
            .map_err(|m| Error::StructureNotPreserved(format!("g₁: {m}")))?;
        Structure::PreframeZero
            .check(&self.op_alg, &self.oq_alg, &pair.second)
            .map_err(|m| Error::StructureNotPreserved(format!("g₂: {m}")))?;
        if let Some(u) = (0..self.op.len())
            .find(|&u| !self.oq.member(pair.second[u]).is_subset(self.oq.member(pair.first[u])))
        {
            return Err(Error::Incomparable(format!(
                "g₁ ≱ g₂ at {}",
                self.op_alg.poset().label(u)
            )));
        }
        Ok(())
    }

    /// `f̄ᵢ = πᵢ ∘ f ∘ inᵢ` with `in₁(U) = (U, ∅)`, `in₂(U) = (P, U)`. The
    /// equations `π₁ f(U, U') = f̄₁(U)` and `π₂ f(U, U') = f̄₂(U')` are
    /// checked on every lens pair.
    pub fn forward(&self, f: &[usize]) -> Result<FramePair> {
        Structure::PlotkinHom
            .check(self.mp.algebra(), self.mq.algebra(), f)
            .map_err(Error::StructureNotPreserved)?;
        let image = |outer: &ElemSet, inner: &ElemSet| -> LensPair {
            lens_of(&self.mq.maps[f[self.lens_index(&self.mp, &self.p, outer, inner)]])
        };
        let open = |s: &ElemSet| self.oq.index_of(s).expect("lens components are opens");
        let empty = ElemSet::new();
        let full = self.p.full_set();
        let first: Vec<usize> = self.op.members().iter().map(|u| open(&image(u, &empty).outer)).collect();
        let second: Vec<usize> = self.op.members().iter().map(|u| open(&image(&full, u).inner)).collect();
        for (i, u) in self.op.members().iter().enumerate() {
            for (k, w) in self.op.members().iter().enumerate() {
                if w.is_subset(u) {
                    let lens = image(u, w);
                    if open(&lens.outer) != first[i] || open(&lens.inner) != second[k] {
                        return Err(Error::StructureNotPreserved(format!(
                            "component equations fail at ({}, {})",
                            self.op_alg.poset().label(i),
                            self.op_alg.poset().label(k)
                        )));
                    }
                }
            }
        }
        let pair = FramePair { first, second };
        self.check_pair(&pair)?;
        Ok(pair)
    }

    /// `ḡ(U, U') = (g₁(U), g₂(U'))`.
    pub fn backward(&self, pair: &FramePair) -> Result<Vec<usize>> {
        if pair.first.len() != self.op.len() || pair.second.len() != self.op.len() {
            return Err(Error::CarrierMismatch("frame maps must be defined on all opens".into()));
        }
        self.check_pair(pair)?;
        let f: Vec<usize> = self
            .mp
            .maps
            .iter()
            .map(|h| {
                let lens = lens_of(h);
                let u = self.op.index_of(&lens.outer).expect("open");
                let w = self.op.index_of(&lens.inner).expect("open");
                self.lens_index(
                    &self.mq,
                    &self.q,
                    self.oq.member(pair.first[u]),
                    self.oq.member(pair.second[w]),
                )
            })
            .collect();
        Structure::PlotkinHom
            .check(self.mp.algebra(), self.mq.algebra(), &f)
            .map_err(Error::StructureNotPreserved)?;
        Ok(f)
    }

    /// All Plotkin homomorphisms `O(P)⋉O(P) -> O(Q)⋉O(Q)`.
    pub fn homomorphisms(&self) -> Result<Vec<Vec<usize>>> {
        enumerate_structure_maps(self.mp.algebra(), self.mq.algebra(), Structure::PlotkinHom, DEFAULT_BUDGET)
    }

    /// All comparable pairs `g₁ ≥ g₂`.
    pub fn pairs(&self) -> Result<Vec<FramePair>> {
        let firsts = enumerate_structure_maps(&self.op_alg, &self.oq_alg, Structure::JoinTop, DEFAULT_BUDGET)?;
        let seconds = enumerate_structure_maps(&self.op_alg, &self.oq_alg, Structure::PreframeZero, DEFAULT_BUDGET)?;
        let mut out = Vec::new();
        for first in &firsts {
            for second in &seconds {
                let pair = FramePair {
                    first: first.clone(),
                    second: second.clone(),
                };
                if self.check_pair(&pair).is_ok() {
                    out.push(pair);
                }
            }
        }
        Ok(out)
    }

    /// Both composites over every homomorphism and every pair.
    pub fn round_trip(&self, strategy: Strategy) -> Result<RoundTripReport> {
        let homs = self.homomorphisms()?;
        let pairs = self.pairs()?;
        let mut mismatches: Vec<String> = exec::map_slice(strategy, &homs, |f| {
            match self.forward(f).and_then(|pair| self.backward(&pair)) {
                Ok(back) if &back == f => None,
                Ok(back) => Some(format!("backward(forward({f:?})) = {back:?}")),
                Err(e) => Some(format!("{f:?}: {e}")),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        mismatches.extend(
            exec::map_slice(strategy, &pairs, |pair| {
                match self.backward(pair).and_then(|f| self.forward(&f)) {
                    Ok(back) if &back == pair => None,
                    Ok(back) => Some(format!("forward(backward({pair:?})) = {back:?}")),
                    Err(e) => Some(format!("{pair:?}: {e}")),
                }
            })
            .into_iter()
            .flatten(),
        );
        if homs.len() != pairs.len() {
            mismatches.push(format!("{} homomorphisms but {} pairs", homs.len(), pairs.len()));
        }
        Ok(RoundTripReport {
            correspondence: "plotkin-hom".into(),
            arrows: pairs.len(),
            transformers: homs.len(),
            seed: None,
            mismatches,
        })
    }
}

pub fn plotkin_hom_forward(setting: &PlotkinHomSetting, f: &[usize]) -> Result<FramePair> {
    setting.forward(f)
}

pub fn plotkin_hom_backward(setting: &PlotkinHomSetting, pair: &FramePair) -> Result<Vec<usize>> {
    setting.backward(pair)
}

/// The Plotkin power domain against Plotkin homomorphisms
/// `Dcpo(Y,3) -> Dcpo(X,3)`: `Pred(g)(h)(x) = g(x)(h)`, and back through
/// the functional `h ↦ t(h)(x)` at each point.
#[derive(Debug, Default)]
pub struct ThreeCorrespondence {
    pub monad: PlotkinMonad,
    dual: PlotkinDualMonad,
}

impl ThreeCorrespondence {
    fn maps(&self, x: &FinPoset) -> Arc<ThreeMaps> {
        self.dual.maps(x)
    }
}

impl Correspondence for ThreeCorrespondence {
    type M = PlotkinMonad;
    type Pred = Vec<Three>;

    fn id(&self) -> CorrespondenceId {
        CorrespondenceId::Three
    }

    fn monad(&self) -> &PlotkinMonad {
        &self.monad
    }

    fn structure(&self) -> Structure {
        Structure::PlotkinHom
    }

    fn pred_space(&self, x: &FinPoset) -> Result<PredSpace<Vec<Three>>> {
        let maps = self.maps(x);
        Ok(PredSpace::new(maps.maps.clone(), maps.algebra().clone()))
    }

    fn pred_json(&self, _x: &FinPoset, h: &Vec<Three>) -> serde_json::Value {
        serde_json::json!(h.iter().map(|t| t.symbol()).collect::<String>())
    }

    fn transform(&self, _x: &FinPoset, _y: &FinPoset, g: &[PlotkinPoint], h: &Vec<Three>) -> Vec<Three> {
        g.iter().map(|p| p.eval(h)).collect()
    }

    fn transpose_back(
        &self,
        x: &FinPoset,
        y: &FinPoset,
        px: &PredSpace<Vec<Three>>,
        py: &PredSpace<Vec<Three>>,
        t: &[usize],
    ) -> Result<Vec<PlotkinPoint>> {
        (0..x.len())
            .map(|a| {
                let phi: Vec<Three> = (0..py.len()).map(|j| px.member(t[j])[a]).collect();
                self.dual.to_point(y, &phi)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::catalog;
    use crate::three::lens_pairs;
    use crate::transformers::{certify, round_trip};

    #[test]
    fn constants() {
        let x = FinPoset::chain(2);
        let full = x.full_set();
        let lens = |t: Three| three_forward(&x, &[t, t]).unwrap();
        assert_eq!(lens(Three::Bowtie), LensPair { outer: full.clone(), inner: ElemSet::new() });
        assert_eq!(lens(Three::One), LensPair { outer: full.clone(), inner: full });
        assert_eq!(lens(Three::Zero), LensPair { outer: ElemSet::new(), inner: ElemSet::new() });
    }

    #[test]
    fn rejects_bad_inputs() {
        let x = FinPoset::chain(2);
        assert!(matches!(three_forward(&x, &[Three::One, Three::Zero]), Err(Error::NotMonotone(_))));
        let bad = LensPair {
            outer: ElemSet::singleton(1),
            inner: x.full_set(),
        };
        assert!(matches!(three_backward(&x, &bad), Err(Error::LensViolation(_))));
    }

    #[test]
    fn three_round_trips_and_preserves_operations() {
        for x in catalog::posets_up_to(4) {
            let maps = ThreeMaps::new(&x).unwrap();
            assert_eq!(maps.len(), lens_pairs(&x).unwrap().len());
            for f in &maps.maps {
                let lens = three_forward(&x, f).unwrap();
                assert_eq!(&three_backward(&x, &lens).unwrap(), f);
                for g in &maps.maps {
                    let pointwise: Vec<Three> = f.iter().zip(g).map(|(a, b)| a.coproduct(*b)).collect();
                    let other = three_forward(&x, g).unwrap();
                    assert_eq!(three_forward(&x, &pointwise).unwrap(), lens.coproduct(&other));
                }
            }
            for lens in lens_pairs(&x).unwrap() {
                assert_eq!(three_forward(&x, &three_backward(&x, &lens).unwrap()).unwrap(), lens);
            }
            let bowtie = vec![Three::Bowtie; x.len()];
            assert_eq!(three_forward(&x, &bowtie).unwrap(), LensPair::bowtie(&x));
        }
    }

    #[test]
    fn identity_hom_gives_identity_pair() {
        for p in catalog::posets_up_to(2) {
            let s = PlotkinHomSetting::new(&p, &p).unwrap();
            let id: Vec<usize> = (0..s.source().len()).collect();
            let pair = s.forward(&id).unwrap();
            let opens: Vec<usize> = (0..p.upsets().unwrap().len()).collect();
            assert_eq!(pair.first, opens);
            assert_eq!(pair.second, opens);
        }
    }

    #[test]
    fn comparable_pair_round_trips() {
        let p = FinPoset::chain(2);
        let s = PlotkinHomSetting::new(&p, &p).unwrap();
        let opens = p.upsets().unwrap();
        let n = opens.len();
        let id: Vec<usize> = (0..n).collect();
        let bottom = opens.index_of(&ElemSet::new()).unwrap();
        let top = opens.index_of(&p.full_set()).unwrap();
        // Meets, top and bottom are kept by collapsing everything below the top.
        let second: Vec<usize> = (0..n).map(|u| if u == top { top } else { bottom }).collect();
        let pair = FramePair { first: id.clone(), second };
        let f = s.backward(&pair).unwrap();
        assert_eq!(s.forward(&f).unwrap(), pair);
        let swapped = FramePair {
            first: pair.second.clone(),
            second: id,
        };
        assert!(s.backward(&swapped).is_err());
    }

    #[test]
    fn incomparable_pair_is_rejected() {
        let q = FinPoset::discrete_n(2);
        let t = PlotkinHomSetting::new(&q, &q).unwrap();
        let oq = q.upsets().unwrap();
        let idx = |m: &[usize]| oq.index_of(&m.iter().copied().collect()).unwrap();
        // g₁ projects onto the first point, g₂ onto the second.
        let first: Vec<usize> = oq
            .members()
            .iter()
            .map(|u| if u.contains(0) { idx(&[0, 1]) } else { idx(&[]) })
            .collect();
        let second: Vec<usize> = oq
            .members()
            .iter()
            .map(|u| if u.contains(1) { idx(&[0, 1]) } else { idx(&[]) })
            .collect();
        let r = t.backward(&FramePair { first, second });
        assert!(matches!(r, Err(Error::Incomparable(_))), "{r:?}");
    }

    #[test]
    fn plotkin_hom_round_trips_to_two() {
        for p in catalog::posets_up_to(2) {
            for q in catalog::posets_up_to(2) {
                let r = PlotkinHomSetting::new(&p, &q).unwrap().round_trip(Strategy::Parallel).unwrap();
                assert!(r.passed(), "{:?}", r.mismatches);
            }
        }
    }

    #[test]
    fn plotkin_correspondence_small() {
        let c = ThreeCorrespondence::default();
        for x in catalog::posets_up_to(1) {
            for y in catalog::posets_up_to(2) {
                let r = round_trip(&c, &x, &y, Strategy::Parallel).unwrap();
                assert!(r.passed(), "{:?}", r.mismatches);
                let cert = certify(&c, &x, &y, Strategy::Parallel).unwrap();
                assert!(cert.bijection, "{cert:?}");
            }
        }
    }
}

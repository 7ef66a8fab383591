//! The Plotkin power domain of a finite poset, obtained by dualizing
//! with `3`.
//!
//! Two presentations are provided.
//!
//! * [`PlotkinDualMonad`]: the Plotkin-algebra maps `Dcpo(X,3) -> 3`,
//!   with `η(x)(h) = h(x)` and `bind(f, φ)(h) = φ(x ↦ f(x)(h))`.
//! * [`PlotkinMonad`]: pairs `(f₁, f₂)` of a join- and top-preserving
//!   `f₁: O(X) -> 2` and a preframe map `f₂: O(X) -> 2` preserving `∅`,
//!   with `f₁ ≥ f₂`. Such an `f₁` is `U ↦ [U ∩ C ≠ ∅]` for a nonempty
//!   downset `C`, and such an `f₂` is `U ↦ [K ⊆ U]` for a nonempty upset
//!   `K`, so a point is stored as `(C, K)`.
//!
//! Since `K` is the least open containing itself, `f₁ ≥ f₂` holds exactly
//! when `C ∩ K ≠ ∅`; [`pair_points`] enumerates the pairs from the
//! functional condition and the tests compare the two.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::bitset::ElemSet;
use crate::error::Result;
use crate::order::{enumerate_structure_maps, subset_label, Algebra, FinPoset, Structure, DEFAULT_BUDGET};
use crate::three::{lens_of, three_algebra, Three, ThreeMaps};

use super::{Enumeration, Monad};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlotkinPoint {
    /// `C`: the nonempty downset read off `f₁`.
    pub closed: ElemSet,
    /// `K`: the nonempty upset read off `f₂`.
    pub saturated: ElemSet,
}

impl PlotkinPoint {
    /// `f₁(U) = [U ∩ C ≠ ∅]`.
    pub fn f1(&self, u: &ElemSet) -> bool {
        u.intersects(&self.closed)
    }

    /// `f₂(U) = [K ⊆ U]`.
    pub fn f2(&self, u: &ElemSet) -> bool {
        self.saturated.is_subset(u)
    }

    /// The element of `3` the functional assigns to `h: X -> 3`:
    /// `j⁻¹(f₁{h ≠ 0}, f₂{h = 1})`.
    pub fn eval(&self, h: &[Three]) -> Three {
        let lens = lens_of(h);
        Three::from_pair(self.f1(&lens.outer), self.f2(&lens.inner))
            .expect("f₁ ≥ f₂ keeps the value inside 2⋉2")
    }
}

/// Every `(f₁, f₂)` with `f₁` join+top, `f₂` preframe+0 and `f₁ ≥ f₂`
/// pointwise on `O(X)`, found by enumerating both kinds of maps.
pub fn pair_points(x: &FinPoset) -> Result<Vec<PlotkinPoint>> {
    let opens = x.upsets()?;
    let o = Algebra::lattice(opens.poset().clone())?;
    let two = crate::order::structure::two();
    let f1s = enumerate_structure_maps(&o, &two, Structure::JoinTop, DEFAULT_BUDGET)?;
    let f2s = enumerate_structure_maps(&o, &two, Structure::PreframeZero, DEFAULT_BUDGET)?;
    let mut out = Vec::new();
    for f1 in &f1s {
        for f2 in &f2s {
            if (0..opens.len()).all(|u| f1[u] >= f2[u]) {
                let closed = (0..x.len())
                    .filter(|&a| f1[opens.index_of(x.up_of(a)).expect("↑a is open")] == 1)
                    .collect();
                let saturated = (0..opens.len())
                    .filter(|&u| f2[u] == 1)
                    .fold(x.full_set(), |acc, u| acc.intersection(opens.member(u)));
                out.push(PlotkinPoint { closed, saturated });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The pair presentation.
#[derive(Clone, Debug)]
pub struct PlotkinMonad {
    pub cap: usize,
}

impl Default for PlotkinMonad {
    fn default() -> Self {
        PlotkinMonad { cap: 4 }
    }
}

impl Monad for PlotkinMonad {
    type Elem = PlotkinPoint;

    fn name(&self) -> &'static str {
        "plotkin"
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn on_sets(&self) -> bool {
        false
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<PlotkinPoint>> {
        self.check_cap(x)?;
        Ok(Enumeration {
            items: pair_points(x)?,
            exhaustive: true,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> PlotkinPoint {
        PlotkinPoint {
            closed: x.down_of(a).clone(),
            saturated: x.up_of(a).clone(),
        }
    }

    fn bind(&self, _x: &FinPoset, _y: &FinPoset, f: &[PlotkinPoint], m: &PlotkinPoint) -> PlotkinPoint {
        PlotkinPoint {
            closed: m.closed.iter().fold(ElemSet::new(), |acc, a| acc.union(&f[a].closed)),
            saturated: m
                .saturated
                .iter()
                .fold(ElemSet::new(), |acc, a| acc.union(&f[a].saturated)),
        }
    }

    /// Pointwise on the functionals: `C ⊆ C'` and `K ⊇ K'`.
    fn leq(&self, _x: &FinPoset, a: &PlotkinPoint, b: &PlotkinPoint) -> bool {
        a.closed.is_subset(&b.closed) && b.saturated.is_subset(&a.saturated)
    }

    fn contains(&self, x: &FinPoset, e: &PlotkinPoint) -> bool {
        let full = x.full_set();
        !e.closed.is_empty()
            && !e.saturated.is_empty()
            && e.closed.is_subset(&full)
            && e.saturated.is_subset(&full)
            && x.is_downset(&e.closed)
            && x.is_upset(&e.saturated)
            && e.closed.intersects(&e.saturated)
    }

    fn render(&self, x: &FinPoset, e: &PlotkinPoint) -> String {
        format!(
            "({}, {})",
            subset_label(x.labels(), &e.closed),
            subset_label(x.labels(), &e.saturated)
        )
    }

    fn to_json(&self, x: &FinPoset, e: &PlotkinPoint) -> Value {
        let names = |s: &ElemSet| s.iter().map(|i| x.label(i).to_string()).collect::<Vec<_>>();
        json!([names(&e.closed), names(&e.saturated)])
    }
}

/// The functional presentation. An element is the table of `φ` on the
/// maps of [`ThreeMaps`] for the object (in their enumeration order).
#[derive(Debug, Default)]
pub struct PlotkinDualMonad {
    cache: Mutex<HashMap<FinPoset, Arc<ThreeMaps>>>,
}

impl Clone for PlotkinDualMonad {
    fn clone(&self) -> Self {
        PlotkinDualMonad::default()
    }
}

pub const PLOTKIN_DUAL_CAP: usize = 3;

impl PlotkinDualMonad {
    pub fn maps(&self, x: &FinPoset) -> Arc<ThreeMaps> {
        let mut cache = self.cache.lock().expect("cache lock");
        cache
            .entry(x.clone())
            .or_insert_with(|| Arc::new(ThreeMaps::new(x).expect("poset within cap")))
            .clone()
    }

    /// The functional of a pair: `h ↦ j⁻¹(f₁{h ≠ 0}, f₂{h = 1})`.
    pub fn from_point(&self, x: &FinPoset, p: &PlotkinPoint) -> Vec<Three> {
        self.maps(x).maps.iter().map(|h| p.eval(h)).collect()
    }

    /// The pair of a functional: `f₁ = π₁ ∘ φ ∘ in₁`, `f₂ = π₂ ∘ φ ∘ in₂`
    /// with `in₁(U) = (U, ∅)` and `in₂(U) = (X, U)`, read back as `(C, K)`.
    pub fn to_point(&self, x: &FinPoset, phi: &[Three]) -> Result<PlotkinPoint> {
        let maps = self.maps(x);
        let n = x.len();
        let at = |outer: &ElemSet, inner: &ElemSet| -> Three {
            let h: Vec<Three> = (0..n)
                .map(|a| Three::from_pair(outer.contains(a), inner.contains(a)).expect("inner ⊆ outer"))
                .collect();
            phi[maps.index_of(&h).expect("lens maps are monotone")]
        };
        let f1 = |u: &ElemSet| at(u, &ElemSet::new()).j().0;
        let f2 = |u: &ElemSet| at(&x.full_set(), u).j().1;
        let closed = (0..n).filter(|&a| f1(x.up_of(a))).collect();
        let saturated = x
            .upsets()?
            .members()
            .iter()
            .filter(|u| f2(u))
            .fold(x.full_set(), |acc, u| acc.intersection(u));
        Ok(PlotkinPoint { closed, saturated })
    }
}

impl Monad for PlotkinDualMonad {
    type Elem = Vec<Three>;

    fn name(&self) -> &'static str {
        "plotkin-dual"
    }

    fn cap(&self) -> usize {
        PLOTKIN_DUAL_CAP
    }

    fn on_sets(&self) -> bool {
        false
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<Vec<Three>>> {
        self.check_cap(x)?;
        let maps = self.maps(x);
        let homs = enumerate_structure_maps(
            maps.algebra(),
            &three_algebra(),
            Structure::PlotkinHom,
            DEFAULT_BUDGET,
        )?;
        let mut items: Vec<Vec<Three>> = homs
            .into_iter()
            .map(|g| g.into_iter().map(Three::from_index).collect())
            .collect();
        items.sort();
        Ok(Enumeration {
            items,
            exhaustive: true,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> Vec<Three> {
        self.maps(x).maps.iter().map(|h| h[a]).collect()
    }

    fn bind(&self, x: &FinPoset, y: &FinPoset, f: &[Vec<Three>], m: &Vec<Three>) -> Vec<Three> {
        let (mx, my) = (self.maps(x), self.maps(y));
        (0..my.len())
            .map(|h| {
                let pulled: Vec<Three> = (0..x.len()).map(|a| f[a][h]).collect();
                m[mx.index_of(&pulled).expect("Kleisli arrows are monotone")]
            })
            .collect()
    }

    fn leq(&self, _x: &FinPoset, a: &Vec<Three>, b: &Vec<Three>) -> bool {
        a.iter().zip(b).all(|(p, q)| p <= q)
    }

    fn contains(&self, x: &FinPoset, e: &Vec<Three>) -> bool {
        let maps = self.maps(x);
        let graph: Vec<usize> = e.iter().map(|t| t.index()).collect();
        e.len() == maps.len()
            && Structure::PlotkinHom
                .check(maps.algebra(), &three_algebra(), &graph)
                .is_ok()
    }

    fn render(&self, _x: &FinPoset, e: &Vec<Three>) -> String {
        e.iter().map(|t| t.symbol()).collect()
    }

    fn to_json(&self, _x: &FinPoset, e: &Vec<Three>) -> Value {
        json!(e.iter().map(|t| t.symbol()).collect::<Vec<_>>())
    }
}

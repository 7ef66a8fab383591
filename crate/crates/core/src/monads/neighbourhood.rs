//! The neighbourhood monad `N = PP` and its submonads: monotone
//! neighbourhoods `M` (upsets of `P(X)`), filters `F` and ultrafilters `U`.
//!
//! An element is a set of subsets of `X`, stored as a set of subset masks.
//! All four share `η(x) = {A | x ∈ A}` and the double-dual extension
//! `bind(f, m) = {B ⊆ Y | {x | B ∈ f(x)} ∈ m}`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::bitset::{all_subsets, ElemSet};
use crate::error::{Error, Result};
use crate::order::{
    enumerate_structure_maps, subset_label, Algebra, FinPoset, FinSet, Structure, DEFAULT_BUDGET,
};

use super::{Enumeration, Monad};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NKind {
    Neighbourhood,
    MonotoneNeighbourhood,
    Filter,
    Ultrafilter,
}

impl NKind {
    pub fn name(self) -> &'static str {
        match self {
            NKind::Neighbourhood => "neighbourhood",
            NKind::MonotoneNeighbourhood => "monotone-neighbourhood",
            NKind::Filter => "filter",
            NKind::Ultrafilter => "ultrafilter",
        }
    }

    fn default_cap(self) -> usize {
        match self {
            NKind::Ultrafilter => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for NKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            NKind::Neighbourhood,
            NKind::MonotoneNeighbourhood,
            NKind::Filter,
            NKind::Ultrafilter,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct NeighbourhoodMonad {
    pub kind: NKind,
    pub cap: usize,
}

impl NeighbourhoodMonad {
    pub fn new(kind: NKind) -> Self {
        NeighbourhoodMonad {
            kind,
            cap: kind.default_cap(),
        }
    }
}

/// `m` is closed under supersets (as a family of subsets of `0..n`).
pub fn is_up_closed(n: usize, m: &ElemSet) -> bool {
    let full = (1usize << n) - 1;
    m.iter().all(|a| (0..n).all(|i| m.contains(a | (1 << i) & full)))
}

/// `m` is a filter of `P(X)`: up-closed, contains `X`, closed under `∩`.
pub fn is_filter(n: usize, m: &ElemSet) -> bool {
    let full = (1usize << n) - 1;
    is_up_closed(n, m) && m.contains(full) && m.iter().all(|a| m.iter().all(|b| m.contains(a & b)))
}

/// `m` is an ultrafilter: a proper filter containing `A` or its complement.
pub fn is_ultrafilter(n: usize, m: &ElemSet) -> bool {
    let full = (1usize << n) - 1;
    is_filter(n, m) && !m.contains(0) && (0..=full).all(|a| m.contains(a) || m.contains(full & !a))
}

/// The filter is principal: `m = {B | A ⊆ B}` for `A = ⋂m`.
pub fn is_principal(n: usize, m: &ElemSet) -> bool {
    let full = (1usize << n) - 1;
    let a = m.iter().fold(full, |acc, b| acc & b);
    let principal: ElemSet = (0..=full).filter(|b| b & a == a).collect();
    *m == principal
}

impl NeighbourhoodMonad {
    fn valid(&self, n: usize, m: &ElemSet) -> bool {
        if m.iter().any(|a| a >= 1 << n) {
            return false;
        }
        match self.kind {
            NKind::Neighbourhood => true,
            NKind::MonotoneNeighbourhood => is_up_closed(n, m),
            NKind::Filter => is_filter(n, m),
            NKind::Ultrafilter => is_ultrafilter(n, m),
        }
    }
}

impl Monad for NeighbourhoodMonad {
    type Elem = ElemSet;

    fn name(&self) -> &'static str {
        self.kind.name()
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn on_sets(&self) -> bool {
        true
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<ElemSet>> {
        self.check_cap(x)?;
        let n = x.len();
        let items: Vec<ElemSet> = match self.kind {
            NKind::Neighbourhood => all_subsets(1 << n).collect(),
            _ => {
                let up = FinPoset::powerset(&FinSet::numbered(n)).upsets_capped(1 << n)?;
                up.members()
                    .iter()
                    .filter(|m| self.valid(n, m))
                    .cloned()
                    .collect()
            }
        };
        Ok(Enumeration {
            items,
            exhaustive: true,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> ElemSet {
        (0..1usize << x.len()).filter(|s| s >> a & 1 == 1).collect()
    }

    fn bind(&self, x: &FinPoset, y: &FinPoset, f: &[ElemSet], m: &ElemSet) -> ElemSet {
        (0..1usize << y.len())
            .filter(|&b| {
                let preimage = (0..x.len())
                    .filter(|&a| f[a].contains(b))
                    .fold(0usize, |acc, a| acc | 1 << a);
                m.contains(preimage)
            })
            .collect()
    }

    fn leq(&self, _x: &FinPoset, a: &ElemSet, b: &ElemSet) -> bool {
        a.is_subset(b)
    }

    fn contains(&self, x: &FinPoset, e: &ElemSet) -> bool {
        self.valid(x.len(), e)
    }

    fn render(&self, x: &FinPoset, e: &ElemSet) -> String {
        let parts: Vec<String> = e
            .iter()
            .map(|s| subset_label(x.labels(), &ElemSet::from_mask(s as u64)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn to_json(&self, x: &FinPoset, e: &ElemSet) -> Value {
        let sets: Vec<Vec<&str>> = e
            .iter()
            .map(|s| ElemSet::from_mask(s as u64).iter().map(|i| x.label(i)).collect())
            .collect();
        json!(sets)
    }
}

/// Complete-Boolean-algebra maps `P(X) -> 2` compared with the units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    pub size: usize,
    /// Number of maps preserving complements and all joins.
    pub cba_maps: usize,
    /// Number of Boolean-algebra maps (finite joins, meets, complement).
    pub ba_maps: usize,
    /// For each CBA map, the unique `x` with `map = η(x)`, if any.
    pub matched_units: Vec<Option<usize>>,
}

impl CollapseReport {
    /// Exactly `|X|` maps, each the unit at a distinct point.
    pub fn collapses(&self) -> bool {
        let mut xs: Vec<usize> = self.matched_units.iter().flatten().copied().collect();
        xs.sort();
        xs.dedup();
        self.cba_maps == self.size
            && self.matched_units.iter().all(Option::is_some)
            && xs.len() == self.size
    }
}

/// Enumerates the CBA maps `P(X) -> 2` and matches them with `η(x)(U) = [x ∈ U]`.
pub fn cba_collapse_check(size: usize) -> Result<CollapseReport> {
    if size > 3 {
        return Err(Error::too_large("CBA collapse check", size as u128, 3));
    }
    let px = Algebra::new(FinPoset::powerset(&FinSet::numbered(size)));
    let two = crate::order::structure::two();
    let cba = enumerate_structure_maps(&px, &two, Structure::CompleteBoolean, DEFAULT_BUDGET)?;
    let ba = enumerate_structure_maps(&px, &two, Structure::Boolean, DEFAULT_BUDGET)?;
    let matched_units = cba
        .iter()
        .map(|h| (0..size).find(|&x| (0..1usize << size).all(|u| h[u] == (u >> x & 1))))
        .collect();
    Ok(CollapseReport {
        size,
        cba_maps: cba.len(),
        ba_maps: ba.len(),
        matched_units,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Strategy;
    use crate::monads::laws::{check_laws, LawConfig};

    fn count(kind: NKind, n: usize) -> usize {
        NeighbourhoodMonad::new(kind)
            .elements(&FinPoset::discrete_n(n))
            .unwrap()
            .items
            .len()
    }

    /// Brute force over all families of subsets.
    fn brute(n: usize, keep: impl Fn(&ElemSet) -> bool) -> usize {
        all_subsets(1 << n).filter(|m| keep(m)).count()
    }

    #[test]
    fn cardinalities() {
        assert_eq!(count(NKind::Neighbourhood, 2), 16);
        assert_eq!(count(NKind::MonotoneNeighbourhood, 1), 3);
        assert_eq!(count(NKind::MonotoneNeighbourhood, 2), 6);
        assert_eq!(count(NKind::Filter, 2), 4);
        assert_eq!(count(NKind::Ultrafilter, 0), 0);
        for n in 0..=3 {
            assert_eq!(count(NKind::MonotoneNeighbourhood, n), brute(n, |m| is_up_closed(n, m)));
            assert_eq!(count(NKind::Filter, n), 1 << n);
            assert_eq!(count(NKind::Ultrafilter, n), n);
        }
    }

    #[test]
    fn filters_are_principal() {
        for n in 0..=3 {
            let m = NeighbourhoodMonad::new(NKind::Filter);
            for f in m.elements(&FinPoset::discrete_n(n)).unwrap().items {
                assert!(is_principal(n, &f));
            }
        }
    }

    #[test]
    fn ultrafilters_are_units() {
        let m = NeighbourhoodMonad::new(NKind::Ultrafilter);
        for n in 0..=4 {
            let x = FinPoset::discrete_n(n);
            let items = m.elements(&x).unwrap().items;
            for u in &items {
                let hits = (0..n).filter(|&a| m.unit(&x, a) == *u).count();
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn unit_of_singleton() {
        let m = NeighbourhoodMonad::new(NKind::Neighbourhood);
        let x = FinPoset::discrete_n(1);
        assert_eq!(m.unit(&x, 0), ElemSet::singleton(1));
    }

    #[test]
    fn cba_collapse() {
        for n in 1..=3 {
            let r = cba_collapse_check(n).unwrap();
            assert!(r.collapses(), "{r:?}");
            assert_eq!(r.ba_maps, n);
        }
        assert_eq!(cba_collapse_check(0).unwrap().cba_maps, 0);
    }

    #[test]
    fn small_law_suites() {
        for kind in [NKind::Filter, NKind::Ultrafilter, NKind::MonotoneNeighbourhood] {
            let r = check_laws(&NeighbourhoodMonad::new(kind), &LawConfig::new(1), Strategy::Parallel)
                .unwrap();
            assert!(r.passed(), "{kind}: {:?}", r.failures);
        }
    }
}

//! The Smyth power domain of a finite poset, in two presentations:
//! nonempty upsets `K` (compact saturated sets) ordered by reverse
//! inclusion, and proper Scott-open filters of the open-set lattice
//! `O(X)`. The two are matched by `K ↦ {V ∈ O(X) | K ⊆ V}` and
//! `Φ ↦ ⋂Φ`.

use serde_json::{json, Value};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::order::{subset_label, FinPoset, SubsetLattice};

use super::{Enumeration, Monad};

#[derive(Clone, Debug)]
pub struct SmythMonad {
    pub cap: usize,
}

impl Default for SmythMonad {
    fn default() -> Self {
        SmythMonad { cap: 5 }
    }
}

impl Monad for SmythMonad {
    type Elem = ElemSet;

    fn name(&self) -> &'static str {
        "smyth"
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn on_sets(&self) -> bool {
        false
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<ElemSet>> {
        self.check_cap(x)?;
        let items = x
            .upsets()?
            .members()
            .iter()
            .filter(|u| !u.is_empty())
            .cloned()
            .collect();
        Ok(Enumeration {
            items,
            exhaustive: true,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> ElemSet {
        x.up_of(a).clone()
    }

    fn bind(&self, _x: &FinPoset, _y: &FinPoset, f: &[ElemSet], m: &ElemSet) -> ElemSet {
        m.iter().fold(ElemSet::new(), |acc, a| acc.union(&f[a]))
    }

    /// Smaller sets are more informative: `K ≤ K'` iff `K ⊇ K'`.
    fn leq(&self, _x: &FinPoset, a: &ElemSet, b: &ElemSet) -> bool {
        b.is_subset(a)
    }

    fn contains(&self, x: &FinPoset, e: &ElemSet) -> bool {
        !e.is_empty() && e.is_subset(&x.full_set()) && x.is_upset(e)
    }

    fn render(&self, x: &FinPoset, e: &ElemSet) -> String {
        subset_label(x.labels(), e)
    }

    fn to_json(&self, x: &FinPoset, e: &ElemSet) -> Value {
        json!(e.iter().map(|i| x.label(i)).collect::<Vec<_>>())
    }
}

/// A filter of `O(X)`, as a set of indices into the opens lattice.
pub type OpenFilter = ElemSet;

/// `Φ` is a proper Scott-open filter of `O(X)`: an upset of the opens
/// (Scott-open, as `O(X)` is finite), containing `X`, closed under `∩`,
/// and not containing `∅`.
pub fn is_proper_open_filter(opens: &SubsetLattice, phi: &OpenFilter) -> bool {
    let lat = opens.poset();
    let top = lat.top();
    let bottom = lat.bottom();
    lat.is_upset(phi)
        && top.is_some_and(|t| phi.contains(t))
        && bottom.is_some_and(|b| !phi.contains(b))
        && phi.iter().all(|a| {
            phi.iter().all(|b| {
                let meet = opens.member(a).intersection(opens.member(b));
                opens.index_of(&meet).is_some_and(|m| phi.contains(m))
            })
        })
}

/// Every proper Scott-open filter of `O(X)`.
pub fn open_filters(opens: &SubsetLattice) -> Result<Vec<OpenFilter>> {
    Ok(opens
        .poset()
        .upsets_capped(opens.len())?
        .members()
        .iter()
        .filter(|phi| is_proper_open_filter(opens, phi))
        .cloned()
        .collect())
}

/// `K ↦ {V ∈ O(X) | K ⊆ V}`.
pub fn filter_of(opens: &SubsetLattice, k: &ElemSet) -> OpenFilter {
    (0..opens.len()).filter(|&v| k.is_subset(opens.member(v))).collect()
}

/// `Φ ↦ ⋂Φ`, checking that `Φ` is a proper open filter.
pub fn saturated_of(opens: &SubsetLattice, phi: &OpenFilter) -> Result<ElemSet> {
    if !is_proper_open_filter(opens, phi) {
        return Err(Error::InvalidElement("not a proper Scott-open filter".into()));
    }
    let full = ElemSet::full(opens.ambient_len());
    Ok(phi.iter().fold(full, |acc, v| acc.intersection(opens.member(v))))
}

/// Kleisli extension in the filter presentation:
/// `bind(f, Φ) = {V ∈ O(Y) | {x | V ∈ f(x)} ∈ Φ}`.
pub fn filter_bind(
    opens_x: &SubsetLattice,
    opens_y: &SubsetLattice,
    f: &[OpenFilter],
    phi: &OpenFilter,
) -> OpenFilter {
    (0..opens_y.len())
        .filter(|&v| {
            let pre: ElemSet = (0..f.len()).filter(|&x| f[x].contains(v)).collect();
            opens_x.index_of(&pre).is_some_and(|i| phi.contains(i))
        })
        .collect()
}

/// `Pred(g)(V) = {x | K_x ⊆ V}` for `g: X -> S(Y)` in the upset
/// presentation.
pub fn smyth_pred_upsets(g: &[ElemSet], v: &ElemSet) -> ElemSet {
    (0..g.len()).filter(|&x| g[x].is_subset(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Strategy;
    use crate::monads::laws::{check_laws, LawConfig};
    use crate::order::catalog;

    #[test]
    fn sizes() {
        let s = SmythMonad::default();
        assert_eq!(s.elements(&FinPoset::chain(2)).unwrap().items.len(), 2);
        assert_eq!(s.elements(&FinPoset::discrete_n(2)).unwrap().items.len(), 3);
    }

    #[test]
    fn representations_match() {
        let s = SmythMonad::default();
        for x in catalog::posets_up_to(4) {
            let opens = x.upsets().unwrap();
            let ks = s.elements(&x).unwrap().items;
            let filters = open_filters(&opens).unwrap();
            assert_eq!(ks.len(), filters.len());
            for k in &ks {
                let phi = filter_of(&opens, k);
                assert!(filters.contains(&phi));
                assert_eq!(&saturated_of(&opens, &phi).unwrap(), k);
            }
            for a in 0..x.len() {
                let principal = filter_of(&opens, &s.unit(&x, a));
                assert_eq!(saturated_of(&opens, &principal).unwrap(), *x.up_of(a));
            }
        }
    }

    #[test]
    fn bijection_commutes_with_bind() {
        let s = SmythMonad::default();
        for x in catalog::posets_up_to(2) {
            for y in catalog::posets_up_to(2) {
                let (ox, oy) = (x.upsets().unwrap(), y.upsets().unwrap());
                let ty = s.elements(&y).unwrap().items;
                let tx = s.elements(&x).unwrap().items;
                let cod = crate::monads::as_poset(&s, &y, &ty).unwrap();
                let arrows = crate::order::enumerate_structure_maps(
                    &crate::order::Algebra::new(x.clone()),
                    &crate::order::Algebra::new(cod),
                    crate::order::Structure::Monotone,
                    crate::order::DEFAULT_BUDGET,
                )
                .unwrap();
                for arrow in arrows {
                    let f: Vec<ElemSet> = arrow.iter().map(|&i| ty[i].clone()).collect();
                    let ff: Vec<OpenFilter> = f.iter().map(|k| filter_of(&oy, k)).collect();
                    for k in &tx {
                        let direct = filter_of(&oy, &s.bind(&x, &y, &f, k));
                        let via = filter_bind(&ox, &oy, &ff, &filter_of(&ox, k));
                        assert_eq!(direct, via);
                    }
                }
            }
        }
    }

    #[test]
    fn laws_exhaustive_to_two() {
        let r = check_laws(&SmythMonad::default(), &LawConfig::new(2), Strategy::Parallel).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}

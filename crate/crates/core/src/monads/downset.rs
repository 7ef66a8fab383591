use serde_json::{json, Value};

use crate::bitset::ElemSet;
use crate::error::Result;
use crate::order::{subset_label, FinPoset};

use super::{Enumeration, Monad};

/// Downsets ordered by inclusion, with `η(x) = ↓x` and
/// `bind(f, U) = ⋃_{x ∈ U} f(x)`. With `nonempty` set this is the Hoare
/// power domain of a finite poset (Scott closure is the identity on
/// downsets of a finite poset).
#[derive(Clone, Debug)]
pub struct DownsetMonad {
    pub nonempty: bool,
    pub cap: usize,
}

impl DownsetMonad {
    pub fn downsets() -> Self {
        DownsetMonad {
            nonempty: false,
            cap: 5,
        }
    }

    pub fn hoare() -> Self {
        DownsetMonad {
            nonempty: true,
            cap: 5,
        }
    }
}

impl Monad for DownsetMonad {
    type Elem = ElemSet;

    fn name(&self) -> &'static str {
        if self.nonempty {
            "hoare"
        } else {
            "downset"
        }
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
            .downsets()?
            .members()
            .iter()
            .filter(|d| !(self.nonempty && d.is_empty()))
            .cloned()
            .collect();
        Ok(Enumeration {
            items,
            exhaustive: true,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> ElemSet {
        x.down_of(a).clone()
    }

    fn bind(&self, _x: &FinPoset, _y: &FinPoset, f: &[ElemSet], m: &ElemSet) -> ElemSet {
        m.iter().fold(ElemSet::new(), |acc, a| acc.union(&f[a]))
    }

    fn leq(&self, _x: &FinPoset, a: &ElemSet, b: &ElemSet) -> bool {
        a.is_subset(b)
    }

    fn contains(&self, x: &FinPoset, e: &ElemSet) -> bool {
        e.is_subset(&x.full_set()) && x.is_downset(e) && !(self.nonempty && e.is_empty())
    }

    fn render(&self, x: &FinPoset, e: &ElemSet) -> String {
        subset_label(x.labels(), e)
    }

    fn to_json(&self, x: &FinPoset, e: &ElemSet) -> Value {
        json!(e.iter().map(|i| x.label(i)).collect::<Vec<_>>())
    }
}

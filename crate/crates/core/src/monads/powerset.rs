use serde_json::{json, Value};

use crate::bitset::{all_subsets, ElemSet};
use crate::error::Result;
use crate::order::{subset_label, FinPoset};

use super::{Enumeration, Monad};

/// The powerset monad `P` on finite sets: nondeterminism, with
/// `bind(f, A) = ⋃_{x ∈ A} f(x)`.
#[derive(Clone, Debug)]
pub struct PowersetMonad {
    pub cap: usize,
}

impl Default for PowersetMonad {
    fn default() -> Self {
        PowersetMonad { cap: 8 }
    }
}

impl Monad for PowersetMonad {
    type Elem = ElemSet;

    fn name(&self) -> &'static str {
        "powerset"
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn on_sets(&self) -> bool {
        true
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<ElemSet>> {
        self.check_cap(x)?;
        Ok(Enumeration {
            items: all_subsets(x.len()).collect(),
            exhaustive: true,
        })
    }

    fn unit(&self, _x: &FinPoset, a: usize) -> ElemSet {
        ElemSet::singleton(a)
    }

    fn bind(&self, _x: &FinPoset, _y: &FinPoset, f: &[ElemSet], m: &ElemSet) -> ElemSet {
        m.iter().fold(ElemSet::new(), |acc, a| acc.union(&f[a]))
    }

    fn leq(&self, _x: &FinPoset, a: &ElemSet, b: &ElemSet) -> bool {
        a.is_subset(b)
    }

    fn contains(&self, x: &FinPoset, e: &ElemSet) -> bool {
        e.is_subset(&ElemSet::full(x.len()))
    }

    fn render(&self, x: &FinPoset, e: &ElemSet) -> String {
        subset_label(x.labels(), e)
    }

    fn to_json(&self, x: &FinPoset, e: &ElemSet) -> Value {
        json!(e.iter().map(|i| x.label(i)).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Strategy;
    use crate::monads::laws::{check_laws, LawConfig};

    #[test]
    fn bind_is_union_of_images() {
        let x = FinPoset::discrete_n(3);
        let f = [ElemSet::from_mask(0b001), ElemSet::from_mask(0b110), ElemSet::new()];
        let m = PowersetMonad::default();
        assert_eq!(m.bind(&x, &x, &f, &ElemSet::from_mask(0b011)), ElemSet::from_mask(0b111));
        assert_eq!(m.bind(&x, &x, &f, &ElemSet::from_mask(0b100)), ElemSet::new());
    }

    #[test]
    fn laws_up_to_two() {
        let r = check_laws(&PowersetMonad::default(), &LawConfig::new(2), Strategy::Sequential)
            .unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(!r.sampled());
    }
}

//! The expectation monad, intensionally: an element of `E(X)` is a
//! functional on fuzzy predicates, applied but never enumerated.
//! `σ: D ⇒ E` sends `ω` to `p ↦ Σ_x p(x)·ω(x)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::effect::{Distribution, FuzzyPredicate, Rat};
use crate::error::{Error, Result};
use crate::order::FinSet;

type Eval = dyn Fn(&FuzzyPredicate) -> Rat + Send + Sync;

/// A map `[0,1]^X -> [0,1]`.
#[derive(Clone)]
pub struct Functional {
    carrier: FinSet,
    eval: Arc<Eval>,
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functional on {:?}", self.carrier.elements())
    }
}

impl Functional {
    pub fn new(carrier: FinSet, eval: impl Fn(&FuzzyPredicate) -> Rat + Send + Sync + 'static) -> Self {
        Functional {
            carrier,
            eval: Arc::new(eval),
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn apply(&self, p: &FuzzyPredicate) -> Result<Rat> {
        if p.carrier() != &self.carrier {
            return Err(Error::CarrierMismatch("predicate on another carrier".into()));
        }
        Ok((self.eval)(p))
    }

    /// The first probe on which the two functionals differ.
    pub fn disagreement<'a>(&self, other: &Functional, probes: &'a [FuzzyPredicate]) -> Option<&'a FuzzyPredicate> {
        probes
            .iter()
            .find(|p| self.apply(p).ok() != other.apply(p).ok())
    }

    /// Effect-module-map conditions on probes: `1 ↦ 1`, `⊕` and scalar
    /// multiplication preserved. Returns a description of the first failure.
    pub fn check_module_map(&self, probes: &[FuzzyPredicate], scalars: &[Rat]) -> Option<String> {
        let one = FuzzyPredicate::constant(&self.carrier, Rat::one()).ok()?;
        if self.apply(&one).ok()? != Rat::one() {
            return Some("σ(1) ≠ 1".into());
        }
        for p in probes {
            for q in probes {
                if let Ok(Some(pq)) = p.ovee(q) {
                    let lhs = self.apply(&pq).ok()?;
                    let rhs = self.apply(p).ok()? + self.apply(q).ok()?;
                    if lhs != rhs {
                        return Some(format!("⊕ not preserved at {p}, {q}"));
                    }
                }
            }
            for r in scalars {
                let rp = p.scalar(r).ok()?;
                if self.apply(&rp).ok()? != r * self.apply(p).ok()? {
                    return Some(format!("scalar {r} not preserved at {p}"));
                }
            }
        }
        None
    }
}

/// `σ(ω)(p) = Σ_x p(x)·ω(x)`.
pub fn sigma(carrier: &FinSet, omega: &Distribution) -> Result<Functional> {
    if omega.size() != carrier.len() {
        return Err(Error::CarrierMismatch("distribution on another carrier".into()));
    }
    let omega = omega.clone();
    Ok(Functional::new(carrier.clone(), move |p| omega.expectation(p.values())))
}

/// `η(x)(p) = p(x)`.
pub fn unit(carrier: &FinSet, x: usize) -> Functional {
    Functional::new(carrier.clone(), move |p| p.value(x).clone())
}

/// `bind(f, Φ)(q) = Φ(x ↦ f(x)(q))` for `f: X -> E(Y)`.
pub fn bind(x: &FinSet, y: &FinSet, f: Vec<Functional>, phi: Functional) -> Result<Functional> {
    if f.len() != x.len() || f.iter().any(|g| g.carrier() != y) || phi.carrier() != x {
        return Err(Error::CarrierMismatch("Kleisli arrow does not match its carriers".into()));
    }
    let xc = x.clone();
    Ok(Functional::new(y.clone(), move |q| {
        let pulled = FuzzyPredicate::from_fn(&xc, |a| f[a].apply(q).unwrap_or_else(|_| Rat::zero()))
            .expect("values of a module map stay in [0,1]");
        phi.apply(&pulled).expect("same carrier")
    }))
}

/// Recovers `ω` from `σ(ω)` through `ω(x) = σ(ω)(1_{x})`.
pub fn recover(f: &Functional) -> Result<Distribution> {
    let c = f.carrier();
    let weights: Result<Vec<Rat>> = (0..c.len())
        .map(|x| f.apply(&FuzzyPredicate::indicator(c, &crate::bitset::ElemSet::singleton(x))))
        .collect();
    Distribution::from_dense(&weights?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::rat::{int, rat};

    #[test]
    fn sigma_of_unit_is_evaluation() {
        let x = FinSet::numbered(3);
        let p = FuzzyPredicate::new(x.clone(), vec![rat(1, 5), rat(2, 3), int(1)]).unwrap();
        for a in 0..3 {
            let s = sigma(&x, &Distribution::dirac(3, a)).unwrap();
            assert_eq!(s.apply(&p).unwrap(), unit(&x, a).apply(&p).unwrap());
        }
    }

    #[test]
    fn normalization_and_recovery() {
        let x = FinSet::numbered(2);
        let omega = Distribution::from_dense(&[rat(1, 3), rat(2, 3)]).unwrap();
        let s = sigma(&x, &omega).unwrap();
        let one = FuzzyPredicate::constant(&x, int(1)).unwrap();
        assert_eq!(s.apply(&one).unwrap(), int(1));
        assert_eq!(recover(&s).unwrap(), omega);
    }

    #[test]
    fn sigma_is_a_module_map() {
        let x = FinSet::numbered(2);
        let omega = Distribution::from_dense(&[rat(1, 4), rat(3, 4)]).unwrap();
        let probes = crate::effect::FuzzyPredicates {
            carrier: x.clone(),
            max_den: 3,
        };
        use crate::effect::EffectAlgebra;
        let ps = probes.probes();
        assert_eq!(
            sigma(&x, &omega).unwrap().check_module_map(&ps, &crate::effect::unit_grid(3)),
            None
        );
    }
}

//! The Giry monad on finite measurable spaces: atoms with the full
//! powerset σ-algebra. A probability measure is stored by its value on
//! every event; integrals reduce to finite sums over atoms.

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::bitset::ElemSet;
use crate::effect::{fraction_string, grid_distributions, Distribution, FuzzyPredicate, Rat};
use crate::error::{Error, Result};
use crate::order::{subset_label, FinPoset, FinSet};

use super::expectation::Functional;
use super::{Enumeration, Monad};

/// A probability measure on `P(atoms)`, indexed by event mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    atoms: usize,
    values: Vec<Rat>,
}

impl Measure {
    /// Checks `φ(∅) = 0`, `φ(X) = 1`, nonnegativity and finite additivity.
    pub fn new(atoms: usize, values: Vec<Rat>) -> Result<Measure> {
        if values.len() != 1 << atoms {
            return Err(Error::CarrierMismatch(format!(
                "{} event values for {} atoms",
                values.len(),
                atoms
            )));
        }
        let m = Measure { atoms, values };
        if !m.is_probability_measure() {
            return Err(Error::InvalidElement("not a probability measure".into()));
        }
        Ok(m)
    }

    pub fn is_probability_measure(&self) -> bool {
        let full = (1usize << self.atoms) - 1;
        self.values.len() == 1 << self.atoms
            && self.values[0].is_zero()
            && self.values[full].is_one()
            && self.values.iter().all(|v| !v.is_negative())
            && (0..=full).all(|a| {
                (0..=full)
                    .filter(|b| a & b == 0)
                    .all(|b| self.values[a | b] == &self.values[a] + &self.values[b])
            })
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn event(&self, mask: usize) -> &Rat {
        &self.values[mask]
    }

    /// The measure of a distribution: `φ(M) = Σ_{a ∈ M} ω(a)`.
    pub fn from_distribution(d: &Distribution) -> Measure {
        let n = d.size();
        let values = (0..1usize << n)
            .map(|m| (0..n).filter(|a| m >> a & 1 == 1).map(|a| d.weight(a)).sum())
            .collect();
        Measure { atoms: n, values }
    }

    /// `ω(a) = φ({a})`.
    pub fn to_distribution(&self) -> Distribution {
        Distribution::from_dense(
            &(0..self.atoms).map(|a| self.values[1 << a].clone()).collect::<Vec<_>>(),
        )
        .expect("a probability measure has normalized atoms")
    }

    /// `∫ p dφ = Σ_a p(a)·φ({a})`.
    pub fn integrate(&self, p: &[Rat]) -> Rat {
        (0..self.atoms).map(|a| &p[a] * &self.values[1 << a]).sum()
    }
}

/// `φ ↦ (p ↦ ∫ p dφ)`.
pub fn integral_of(carrier: &FinSet, phi: &Measure) -> Result<Functional> {
    if carrier.len() != phi.atoms {
        return Err(Error::CarrierMismatch("measure on another carrier".into()));
    }
    let phi = phi.clone();
    Ok(Functional::new(carrier.clone(), move |p| phi.integrate(p.values())))
}

/// `I ↦ (M ↦ I(1_M))`.
pub fn measure_of(integral: &Functional) -> Result<Measure> {
    let c = integral.carrier();
    let values: Result<Vec<Rat>> = (0..1usize << c.len())
        .map(|m| integral.apply(&FuzzyPredicate::indicator(c, &ElemSet::from_mask(m as u64))))
        .collect();
    Measure::new(c.len(), values?)
}

#[derive(Clone, Debug)]
pub struct GiryMonad {
    pub cap: usize,
    pub probe_den: u32,
}

impl Default for GiryMonad {
    fn default() -> Self {
        GiryMonad {
            cap: 4,
            probe_den: 4,
        }
    }
}

impl Monad for GiryMonad {
    type Elem = Measure;

    fn name(&self) -> &'static str {
        "giry"
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn on_sets(&self) -> bool {
        true
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<Measure>> {
        self.check_cap(x)?;
        Ok(Enumeration {
            items: grid_distributions(x.len(), self.probe_den)
                .iter()
                .map(Measure::from_distribution)
                .collect(),
            exhaustive: false,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> Measure {
        let values = (0..1usize << x.len())
            .map(|m| if m >> a & 1 == 1 { Rat::one() } else { Rat::zero() })
            .collect();
        Measure {
            atoms: x.len(),
            values,
        }
    }

    /// `bind(f, φ)(B) = ∫ (a ↦ f(a)(B)) dφ`.
    fn bind(&self, _x: &FinPoset, y: &FinPoset, f: &[Measure], m: &Measure) -> Measure {
        let values = (0..1usize << y.len())
            .map(|b| {
                let p: Vec<Rat> = f.iter().map(|fa| fa.values[b].clone()).collect();
                m.integrate(&p)
            })
            .collect();
        Measure {
            atoms: y.len(),
            values,
        }
    }

    fn leq(&self, _x: &FinPoset, a: &Measure, b: &Measure) -> bool {
        a == b
    }

    fn contains(&self, x: &FinPoset, e: &Measure) -> bool {
        e.atoms == x.len() && e.is_probability_measure()
    }

    fn render(&self, x: &FinPoset, e: &Measure) -> String {
        let parts: Vec<String> = (0..x.len())
            .filter(|&a| !e.values[1 << a].is_zero())
            .map(|a| format!("{}·{}", e.values[1 << a], x.label(a)))
            .collect();
        parts.join(" + ")
    }

    fn to_json(&self, x: &FinPoset, e: &Measure) -> Value {
        let map: Map<String, Value> = (0..e.values.len())
            .map(|m| {
                (
                    subset_label(x.labels(), &ElemSet::from_mask(m as u64)),
                    Value::String(fraction_string(&e.values[m])),
                )
            })
            .collect();
        Value::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::rat::{int, rat};

    #[test]
    fn indicator_integral() {
        let x = FinSet::numbered(2);
        let phi = Measure::from_distribution(&Distribution::from_dense(&[rat(1, 3), rat(2, 3)]).unwrap());
        let i = integral_of(&x, &phi).unwrap();
        let p = FuzzyPredicate::indicator(&x, &ElemSet::singleton(0));
        assert_eq!(i.apply(&p).unwrap(), rat(1, 3));
        let c = FuzzyPredicate::constant(&x, rat(2, 7)).unwrap();
        assert_eq!(i.apply(&c).unwrap(), rat(2, 7));
    }

    #[test]
    fn round_trip() {
        let x = FinSet::numbered(3);
        for d in grid_distributions(3, 3) {
            let phi = Measure::from_distribution(&d);
            assert!(phi.is_probability_measure());
            assert_eq!(measure_of(&integral_of(&x, &phi).unwrap()).unwrap(), phi);
            assert_eq!(phi.to_distribution(), d);
        }
    }

    #[test]
    fn rejects_non_additive() {
        assert!(Measure::new(1, vec![int(0), rat(1, 2)]).is_err());
        assert!(Measure::new(2, vec![int(0), rat(1, 2), rat(1, 2), rat(3, 4)]).is_err());
    }
}

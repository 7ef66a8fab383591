use serde_json::Value;

use crate::effect::{grid_distributions, Distribution};
use crate::error::Result;
use crate::order::FinPoset;

use super::{Enumeration, Monad};

/// The finite distribution monad `D`. `D(X)` is infinite, so
/// [`Monad::elements`] returns the distributions whose weights have
/// denominators at most `probe_den`.
#[derive(Clone, Debug)]
pub struct DistributionMonad {
    pub cap: usize,
    pub probe_den: u32,
}

impl Default for DistributionMonad {
    fn default() -> Self {
        DistributionMonad {
            cap: 4,
            probe_den: 4,
        }
    }
}

impl Monad for DistributionMonad {
    type Elem = Distribution;

    fn name(&self) -> &'static str {
        "distribution"
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn on_sets(&self) -> bool {
        true
    }

    fn elements(&self, x: &FinPoset) -> Result<Enumeration<Distribution>> {
        self.check_cap(x)?;
        Ok(Enumeration {
            items: grid_distributions(x.len(), self.probe_den),
            exhaustive: false,
        })
    }

    fn unit(&self, x: &FinPoset, a: usize) -> Distribution {
        Distribution::dirac(x.len(), a)
    }

    fn bind(&self, _x: &FinPoset, _y: &FinPoset, f: &[Distribution], m: &Distribution) -> Distribution {
        m.bind(f).expect("Kleisli arrow matches its carriers")
    }

    fn leq(&self, _x: &FinPoset, a: &Distribution, b: &Distribution) -> bool {
        a == b
    }

    fn contains(&self, x: &FinPoset, e: &Distribution) -> bool {
        e.size() == x.len() && Distribution::from_dense(&e.dense()).is_ok()
    }

    fn render(&self, x: &FinPoset, e: &Distribution) -> String {
        e.render(x.labels())
    }

    fn to_json(&self, x: &FinPoset, e: &Distribution) -> Value {
        e.to_json(x.labels())
    }
}

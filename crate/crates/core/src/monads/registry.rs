//! Lookup of monad instances by name.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::order::FinPoset;

use super::laws::{check_laws, LawConfig, LawReport};
use super::{
    DistributionMonad, DownsetMonad, GiryMonad, Monad, NKind, NeighbourhoodMonad, PlotkinDualMonad,
    PlotkinMonad, PowersetMonad, SmythMonad,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonadId {
    Powerset,
    Neighbourhood,
    MonotoneNeighbourhood,
    Filter,
    Ultrafilter,
    Downset,
    Hoare,
    Smyth,
    Plotkin,
    PlotkinDual,
    Distribution,
    Giry,
}

impl MonadId {
    pub const ALL: [MonadId; 12] = [
        MonadId::Powerset,
        MonadId::Neighbourhood,
        MonadId::MonotoneNeighbourhood,
        MonadId::Filter,
        MonadId::Ultrafilter,
        MonadId::Downset,
        MonadId::Hoare,
        MonadId::Smyth,
        MonadId::Plotkin,
        MonadId::PlotkinDual,
        MonadId::Distribution,
        MonadId::Giry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MonadId::Powerset => "powerset",
            MonadId::Neighbourhood => "neighbourhood",
            MonadId::MonotoneNeighbourhood => "monotone-neighbourhood",
            MonadId::Filter => "filter",
            MonadId::Ultrafilter => "ultrafilter",
            MonadId::Downset => "downset",
            MonadId::Hoare => "hoare",
            MonadId::Smyth => "smyth",
            MonadId::Plotkin => "plotkin",
            MonadId::PlotkinDual => "plotkin-dual",
            MonadId::Distribution => "distribution",
            MonadId::Giry => "giry",
        }
    }

    /// Short aliases accepted on the command line.
    fn aliases(self) -> &'static [&'static str] {
        match self {
            MonadId::Powerset => &["P", "pow"],
            MonadId::Neighbourhood => &["N", "neighborhood"],
            MonadId::MonotoneNeighbourhood => &["M", "monotone-neighborhood"],
            MonadId::Filter => &["F"],
            MonadId::Ultrafilter => &["U"],
            MonadId::Downset => &["Dwn", "dwn"],
            MonadId::Hoare => &["H"],
            MonadId::Smyth => &["S"],
            MonadId::Plotkin => &[],
            MonadId::PlotkinDual => &[],
            MonadId::Distribution => &["D", "dist"],
            MonadId::Giry => &["G"],
        }
    }

    /// Object size the default law suite runs at.
    pub fn default_law_size(self) -> usize {
        match self {
            MonadId::Neighbourhood | MonadId::MonotoneNeighbourhood | MonadId::PlotkinDual => 2,
            _ => 3,
        }
    }

    /// True when objects are sets rather than posets.
    pub fn on_sets(self) -> bool {
        with_monad(self, OnSets)
    }
}

impl fmt::Display for MonadId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonadId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MonadId::ALL
            .into_iter()
            .find(|m| m.name() == s || m.aliases().contains(&s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// A computation generic over the monad, dispatched by [`with_monad`].
pub trait MonadTask {
    type Output;
    fn run<M: Monad>(self, m: &M) -> Self::Output;
}

pub fn with_monad<T: MonadTask>(id: MonadId, task: T) -> T::Output {
    match id {
        MonadId::Powerset => task.run(&PowersetMonad::default()),
        MonadId::Neighbourhood => task.run(&NeighbourhoodMonad::new(NKind::Neighbourhood)),
        MonadId::MonotoneNeighbourhood => {
            task.run(&NeighbourhoodMonad::new(NKind::MonotoneNeighbourhood))
        }
        MonadId::Filter => task.run(&NeighbourhoodMonad::new(NKind::Filter)),
        MonadId::Ultrafilter => task.run(&NeighbourhoodMonad::new(NKind::Ultrafilter)),
        MonadId::Downset => task.run(&DownsetMonad::downsets()),
        MonadId::Hoare => task.run(&DownsetMonad::hoare()),
        MonadId::Smyth => task.run(&SmythMonad::default()),
        MonadId::Plotkin => task.run(&PlotkinMonad::default()),
        MonadId::PlotkinDual => task.run(&PlotkinDualMonad::default()),
        MonadId::Distribution => task.run(&DistributionMonad::default()),
        MonadId::Giry => task.run(&GiryMonad::default()),
    }
}

struct OnSets;

impl MonadTask for OnSets {
    type Output = bool;
    fn run<M: Monad>(self, m: &M) -> bool {
        m.on_sets()
    }
}

struct Laws<'a> {
    cfg: &'a LawConfig,
    strategy: Strategy,
}

impl MonadTask for Laws<'_> {
    type Output = Result<LawReport>;
    fn run<M: Monad>(self, m: &M) -> Result<LawReport> {
        check_laws(m, self.cfg, self.strategy)
    }
}

pub fn run_laws(id: MonadId, cfg: &LawConfig, strategy: Strategy) -> Result<LawReport> {
    with_monad(id, Laws { cfg, strategy })
}

/// `T(X)` listed for display.
#[derive(Clone, Debug, PartialEq)]
pub struct Listing {
    pub monad: String,
    pub object: Vec<String>,
    pub exhaustive: bool,
    pub elements: Vec<String>,
    pub json: Vec<Value>,
}

impl Listing {
    pub fn to_json(&self) -> Value {
        json!({
            "monad": self.monad,
            "object": self.object,
            "cardinality": self.elements.len(),
            "exhaustive": self.exhaustive,
            "elements": self.json,
        })
    }
}

struct List<'a>(&'a FinPoset);

impl MonadTask for List<'_> {
    type Output = Result<Listing>;
    fn run<M: Monad>(self, m: &M) -> Result<Listing> {
        let x = if m.on_sets() {
            FinPoset::discrete(&self.0.carrier())
        } else {
            self.0.clone()
        };
        let e = m.elements(&x)?;
        Ok(Listing {
            monad: m.name().to_string(),
            object: x.labels().to_vec(),
            exhaustive: e.exhaustive,
            elements: e.items.iter().map(|i| m.render(&x, i)).collect(),
            json: e.items.iter().map(|i| m.to_json(&x, i)).collect(),
        })
    }
}

pub fn list_elements(id: MonadId, x: &FinPoset) -> Result<Listing> {
    with_monad(id, List(x))
}

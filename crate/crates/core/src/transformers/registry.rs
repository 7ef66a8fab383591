//! Correspondences by name, and JSON transposition for the command line.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::monads::{Monad, NKind};
use crate::order::{catalog, FinPoset};

use super::{
    backward, certify, forward, round_trip, round_trip_sampled, BoxCorrespondence, CertReport, Correspondence,
    DiamondCorrespondence, HoareCorrespondence, NbhdCorrespondence, RoundTripReport, SmythCorrespondence,
    ThreeCorrespondence,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorrespondenceId {
    Box,
    Diamond,
    MonotoneNbhd,
    Neighbourhood,
    Filter,
    Ultrafilter,
    Hoare,
    Smyth,
    Three,
}

impl CorrespondenceId {
    pub const ALL: [CorrespondenceId; 9] = [
        CorrespondenceId::Box,
        CorrespondenceId::Diamond,
        CorrespondenceId::MonotoneNbhd,
        CorrespondenceId::Neighbourhood,
        CorrespondenceId::Filter,
        CorrespondenceId::Ultrafilter,
        CorrespondenceId::Hoare,
        CorrespondenceId::Smyth,
        CorrespondenceId::Three,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorrespondenceId::Box => "box",
            CorrespondenceId::Diamond => "diamond",
            CorrespondenceId::MonotoneNbhd => "monotone-nbhd",
            CorrespondenceId::Neighbourhood => "neighbourhood",
            CorrespondenceId::Filter => "filter",
            CorrespondenceId::Ultrafilter => "ultrafilter",
            CorrespondenceId::Hoare => "hoare",
            CorrespondenceId::Smyth => "smyth",
            CorrespondenceId::Three => "three",
        }
    }

    /// True when the correspondence reads objects as plain sets.
    pub fn on_sets(self) -> bool {
        with_correspondence(self, OnSets)
    }

    /// Objects with `n` points: the discrete set, or every poset up to
    /// isomorphism.
    pub fn objects_of_size(self, n: usize) -> Vec<FinPoset> {
        if self.on_sets() {
            vec![FinPoset::discrete_n(n)]
        } else {
            catalog::posets_of_size(n)
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            CorrespondenceId::Box => &["powerset"],
            CorrespondenceId::Diamond => &["downset"],
            CorrespondenceId::MonotoneNbhd => &["monotone-neighbourhood", "M"],
            CorrespondenceId::Neighbourhood => &["N"],
            CorrespondenceId::Filter => &["F"],
            CorrespondenceId::Ultrafilter => &["U"],
            CorrespondenceId::Hoare => &["hoare-pred"],
            CorrespondenceId::Smyth => &["smyth-pred"],
            CorrespondenceId::Three => &["plotkin"],
        }
    }
}

impl fmt::Display for CorrespondenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorrespondenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorrespondenceId::ALL
            .into_iter()
            .find(|c| c.name() == s || c.aliases().contains(&s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// A computation generic over the correspondence.
pub trait CorrespondenceTask {
    type Output;
    fn run<C: Correspondence>(self, c: &C) -> Self::Output;
}

pub fn with_correspondence<T: CorrespondenceTask>(id: CorrespondenceId, task: T) -> T::Output {
    match id {
        CorrespondenceId::Box => task.run(&BoxCorrespondence::default()),
        CorrespondenceId::Diamond => task.run(&DiamondCorrespondence::default()),
        CorrespondenceId::MonotoneNbhd => task.run(&NbhdCorrespondence::new(NKind::MonotoneNeighbourhood)),
        CorrespondenceId::Neighbourhood => task.run(&NbhdCorrespondence::new(NKind::Neighbourhood)),
        CorrespondenceId::Filter => task.run(&NbhdCorrespondence::new(NKind::Filter)),
        CorrespondenceId::Ultrafilter => task.run(&NbhdCorrespondence::new(NKind::Ultrafilter)),
        CorrespondenceId::Hoare => task.run(&HoareCorrespondence::default()),
        CorrespondenceId::Smyth => task.run(&SmythCorrespondence::default()),
        CorrespondenceId::Three => task.run(&ThreeCorrespondence::default()),
    }
}

struct OnSets;

impl CorrespondenceTask for OnSets {
    type Output = bool;
    fn run<C: Correspondence>(self, c: &C) -> bool {
        c.monad().on_sets()
    }
}

struct Certify<'a> {
    x: &'a FinPoset,
    y: &'a FinPoset,
    strategy: Strategy,
}

impl CorrespondenceTask for Certify<'_> {
    type Output = Result<CertReport>;
    fn run<C: Correspondence>(self, c: &C) -> Result<CertReport> {
        certify(c, self.x, self.y, self.strategy)
    }
}

pub fn certify_by_id(id: CorrespondenceId, x: &FinPoset, y: &FinPoset, strategy: Strategy) -> Result<CertReport> {
    with_correspondence(id, Certify { x, y, strategy })
}

struct RoundTrip<'a> {
    x: &'a FinPoset,
    y: &'a FinPoset,
    sampled: Option<(usize, u64)>,
    strategy: Strategy,
}

impl CorrespondenceTask for RoundTrip<'_> {
    type Output = Result<RoundTripReport>;
    fn run<C: Correspondence>(self, c: &C) -> Result<RoundTripReport> {
        match self.sampled {
            None => round_trip(c, self.x, self.y, self.strategy),
            Some((samples, seed)) => round_trip_sampled(c, self.x, self.y, samples, seed, self.strategy),
        }
    }
}

/// Exhaustive round trip, or seeded sampling when `sampled` is set.
pub fn round_trip_by_id(
    id: CorrespondenceId,
    x: &FinPoset,
    y: &FinPoset,
    sampled: Option<(usize, u64)>,
    strategy: Strategy,
) -> Result<RoundTripReport> {
    with_correspondence(
        id,
        RoundTrip {
            x,
            y,
            sampled,
            strategy,
        },
    )
}

/// Direction of a command-line transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Kleisli arrow to transformer.
    Forward,
    /// Transformer to Kleisli arrow.
    Backward,
}

struct Transpose<'a> {
    x: &'a FinPoset,
    y: &'a FinPoset,
    direction: Direction,
    input: &'a Value,
}

fn lookup<T>(items: &[T], json_of: impl Fn(&T) -> Value, wanted: &Value, what: &str) -> Result<usize> {
    items
        .iter()
        .position(|i| &json_of(i) == wanted)
        .ok_or_else(|| Error::InvalidElement(format!("{what} {wanted}")))
}

impl CorrespondenceTask for Transpose<'_> {
    type Output = Result<Value>;

    fn run<C: Correspondence>(self, c: &C) -> Result<Value> {
        let (x, y) = (c.object(self.x), c.object(self.y));
        let (px, py) = (c.pred_space(&x)?, c.pred_space(&y)?);
        let m = c.monad();
        let ty = m.elements(&y)?.items;
        let arrow_json = |g: &[<C::M as Monad>::Elem]| -> Value {
            Value::Object(
                (0..x.len())
                    .map(|a| (x.label(a).to_string(), m.to_json(&y, &g[a])))
                    .collect(),
            )
        };
        let transformer_json = |t: &[usize]| -> Value {
            json!(py
                .members()
                .iter()
                .zip(t)
                .map(|(v, &w)| json!([c.pred_json(&y, v), c.pred_json(&x, px.member(w))]))
                .collect::<Vec<_>>())
        };
        let (g, t) = match self.direction {
            Direction::Forward => {
                let obj = self
                    .input
                    .as_object()
                    .ok_or_else(|| Error::InvalidElement("arrow must map point labels to elements".into()))?;
                let g = (0..x.len())
                    .map(|a| {
                        let v = obj
                            .get(x.label(a))
                            .ok_or_else(|| Error::InvalidElement(format!("no image for {}", x.label(a))))?;
                        lookup(&ty, |e| m.to_json(&y, e), v, "not an element of T(Y):").map(|i| ty[i].clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                let t = forward(c, &x, &y, &px, &py, &g)?;
                (g, t)
            }
            Direction::Backward => {
                let pairs = self
                    .input
                    .as_array()
                    .ok_or_else(|| Error::InvalidElement("transformer must be a list of [input, output] pairs".into()))?;
                let mut t = vec![usize::MAX; py.len()];
                for pair in pairs {
                    let (i, o) = match pair.as_array().map(Vec::as_slice) {
                        Some([i, o]) => (i, o),
                        _ => return Err(Error::InvalidElement(format!("not an [input, output] pair: {pair}"))),
                    };
                    let j = lookup(py.members(), |v| c.pred_json(&y, v), i, "not a predicate on Y:")?;
                    t[j] = lookup(px.members(), |v| c.pred_json(&x, v), o, "not a predicate on X:")?;
                }
                if let Some(j) = t.iter().position(|&w| w == usize::MAX) {
                    return Err(Error::InvalidElement(format!(
                        "transformer undefined at {}",
                        c.pred_json(&y, py.member(j))
                    )));
                }
                let g = backward(c, &x, &y, &px, &py, &t)?;
                (g, t)
            }
        };
        let round_trip = match self.direction {
            Direction::Forward => backward(c, &x, &y, &px, &py, &t).map(|back| back == g),
            Direction::Backward => forward(c, &x, &y, &px, &py, &g).map(|back| back == t),
        }
        .unwrap_or(false);
        let output = match self.direction {
            Direction::Forward => transformer_json(&t),
            Direction::Backward => arrow_json(&g),
        };
        Ok(json!({
            "correspondence": c.id().name(),
            "direction": match self.direction {
                Direction::Forward => "forward",
                Direction::Backward => "backward",
            },
            "output": output,
            "round_trip": round_trip,
        }))
    }
}

/// Transposes a JSON arrow (`{point: element}`) or transformer
/// (`[[input, output], ..]`) and reports whether the round trip returns it.
pub fn transpose_json(
    id: CorrespondenceId,
    x: &FinPoset,
    y: &FinPoset,
    direction: Direction,
    input: &Value,
) -> Result<Value> {
    with_correspondence(
        id,
        Transpose {
            x,
            y,
            direction,
            input,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in CorrespondenceId::ALL {
            assert_eq!(id.name().parse::<CorrespondenceId>().unwrap(), id);
        }
        assert_eq!("plotkin".parse::<CorrespondenceId>().unwrap(), CorrespondenceId::Three);
        assert!("nope".parse::<CorrespondenceId>().is_err());
    }

    #[test]
    fn objects() {
        assert_eq!(CorrespondenceId::Box.objects_of_size(2).len(), 1);
        assert_eq!(CorrespondenceId::Hoare.objects_of_size(2).len(), 2);
        assert!(CorrespondenceId::Ultrafilter.on_sets() && !CorrespondenceId::Three.on_sets());
    }

    #[test]
    fn json_transposition() {
        let x = FinPoset::discrete_n(2);
        let arrow = json!({"0": ["0"], "1": ["0", "1"]});
        let out = transpose_json(CorrespondenceId::Box, &x, &x, Direction::Forward, &arrow).unwrap();
        assert_eq!(out["round_trip"], json!(true));
        let pairs = out["output"].as_array().unwrap();
        assert!(pairs.contains(&json!([["0"], ["0"]])));
        let back = transpose_json(CorrespondenceId::Box, &x, &x, Direction::Backward, &out["output"]).unwrap();
        assert_eq!(back["output"], arrow);
        assert_eq!(back["round_trip"], json!(true));
    }

    #[test]
    fn json_rejects_bad_transformer() {
        let x = FinPoset::discrete_n(1);
        let constant_empty = json!([[[], []], [["0"], []]]);
        let r = transpose_json(CorrespondenceId::Box, &x, &x, Direction::Backward, &constant_empty);
        assert!(matches!(r, Err(Error::NotMeetPreserving(_))));
    }
}

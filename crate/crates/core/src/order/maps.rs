use std::fmt;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

use super::poset::FinPoset;
use super::structure::{Algebra, Structure};

/// A monotone function between finite posets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    dom: FinPoset,
    cod: FinPoset,
    graph: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: FinPoset, cod: FinPoset, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != dom.len() {
            return Err(Error::CarrierMismatch(format!(
                "graph has {} entries for a domain of {}",
                graph.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = graph.iter().find(|&&v| v >= cod.len()) {
            return Err(Error::UnknownElement(format!("codomain index {bad}")));
        }
        for a in 0..dom.len() {
            for b in dom.up_of(a).iter() {
                if !cod.leq(graph[a], graph[b]) {
                    return Err(Error::NotMonotone(format!(
                        "{} <= {} but {} !<= {}",
                        dom.label(a),
                        dom.label(b),
                        cod.label(graph[a]),
                        cod.label(graph[b])
                    )));
                }
            }
        }
        Ok(MonotoneMap { dom, cod, graph })
    }

    pub fn identity(p: &FinPoset) -> Self {
        MonotoneMap {
            dom: p.clone(),
            cod: p.clone(),
            graph: (0..p.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinPoset {
        &self.dom
    }

    pub fn cod(&self) -> &FinPoset {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, a: usize) -> usize {
        self.graph[a]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if first.cod != self.dom {
            return Err(Error::CarrierMismatch("composite of unrelated maps".into()));
        }
        Ok(MonotoneMap {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            graph: first.graph.iter().map(|&x| self.graph[x]).collect(),
        })
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .graph
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{} -> {}", self.dom.label(a), self.cod.label(b)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The right adjoint `f#(b) = ⋁{x | f(x) <= b}` of a join-preserving map
/// between finite lattices. The Galois condition `f(a) <= b <=> a <= f#(b)`
/// is verified for every pair before returning.
pub fn right_adjoint(f: &MonotoneMap) -> Result<MonotoneMap> {
    let dom = Algebra::lattice(f.dom.clone())?;
    let cod = Algebra::lattice(f.cod.clone())?;
    Structure::JoinPreserving
        .check(&dom, &cod, &f.graph)
        .map_err(Error::NotJoinPreserving)?;
    let (l, k) = (&f.dom, &f.cod);
    let graph: Vec<usize> = (0..k.len())
        .map(|b| {
            let below: ElemSet = (0..l.len()).filter(|&x| k.leq(f.graph[x], b)).collect();
            l.join_of(&below).expect("complete lattice")
        })
        .collect();
    for a in 0..l.len() {
        for (b, &gb) in graph.iter().enumerate() {
            if k.leq(f.graph[a], b) != l.leq(a, gb) {
                return Err(Error::StructureNotPreserved(format!(
                    "Galois condition fails at ({}, {})",
                    l.label(a),
                    k.label(b)
                )));
            }
        }
    }
    MonotoneMap::new(k.clone(), l.clone(), graph)
}

/// The four identifications of two-valued maps on a complete lattice `L`
/// with elements of `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoValued {
    /// Join-preserving `L -> 2`: `φ ↦ ⋁{x | φ(x) = 0}`, `a ↦ (x ↦ [x ≰ a])`.
    JoinsToTwo,
    /// Join-preserving `L -> op 2`: `φ ↦ ⋁{x | φ(x) = 1}`, `a ↦ (x ↦ [x ≤ a])`.
    JoinsToOpTwo,
    /// Meet-preserving `L -> 2`: `φ ↦ ⋀{x | φ(x) = 1}`, `a ↦ (x ↦ [a ≤ x])`.
    MeetsToTwo,
    /// Meet-preserving `L -> op 2`: `φ ↦ ⋀{x | φ(x) = 0}`, `a ↦ (x ↦ [a ≰ x])`.
    MeetsToOpTwo,
}

impl TwoValued {
    pub const ALL: [TwoValued; 4] = [
        TwoValued::JoinsToTwo,
        TwoValued::JoinsToOpTwo,
        TwoValued::MeetsToTwo,
        TwoValued::MeetsToOpTwo,
    ];

    /// Target algebra (`2` or `op 2`) and the structure `φ` must preserve.
    pub fn target(self) -> (Algebra, Structure) {
        let two = FinPoset::chain(2);
        match self {
            TwoValued::JoinsToTwo => (Algebra::new(two), Structure::JoinPreserving),
            TwoValued::JoinsToOpTwo => (Algebra::new(two.opposite()), Structure::JoinPreserving),
            TwoValued::MeetsToTwo => (Algebra::new(two), Structure::MeetPreserving),
            TwoValued::MeetsToOpTwo => (Algebra::new(two.opposite()), Structure::MeetPreserving),
        }
    }
}

/// The element of `L` classified by a structure-preserving `φ: L -> 2`
/// (values are `false`/`true` for `0`/`1`).
pub fn lattice_element_iso(l: &FinPoset, phi: &[bool], variant: TwoValued) -> Result<usize> {
    let lattice = Algebra::lattice(l.clone())?;
    let (target, structure) = variant.target();
    let graph: Vec<usize> = phi.iter().map(|&b| usize::from(b)).collect();
    structure
        .check(&lattice, &target, &graph)
        .map_err(Error::StructureNotPreserved)?;
    let pick = |value: bool| -> ElemSet { (0..l.len()).filter(|&x| phi[x] == value).collect() };
    let element = match variant {
        TwoValued::JoinsToTwo => l.join_of(&pick(false)),
        TwoValued::JoinsToOpTwo => l.join_of(&pick(true)),
        TwoValued::MeetsToTwo => l.meet_of(&pick(true)),
        TwoValued::MeetsToOpTwo => l.meet_of(&pick(false)),
    };
    Ok(element.expect("complete lattice"))
}

/// Inverse of [`lattice_element_iso`]: the two-valued map attached to `a`.
pub fn lattice_element_map(l: &FinPoset, a: usize, variant: TwoValued) -> Vec<bool> {
    (0..l.len())
        .map(|x| match variant {
            TwoValued::JoinsToTwo => !l.leq(x, a),
            TwoValued::JoinsToOpTwo => l.leq(x, a),
            TwoValued::MeetsToTwo => l.leq(a, x),
            TwoValued::MeetsToOpTwo => !l.leq(a, x),
        })
        .collect()
}

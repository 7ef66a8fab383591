//! The three-element Plotkin algebra `3 = {0, ⋈, 1}` and lens pairs.
//!
//! `3` is the chain `0 < ⋈ < 1`, identified with `2⋉2 = {(x, y) | x ≥ y}`
//! through `j(0) = (0,0)`, `j(⋈) = (1,0)`, `j(1) = (1,1)`. Its coproduct
//! `⨿` is `0` on two zeros, `1` on two ones and `⋈` otherwise.
//!
//! A monotone map `X -> 3` is the same thing as a lens pair of opens
//! `U₁ ⊇ U₂` via `f ↦ ({f ≠ 0}, {f = 1})`.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::order::structure::Table;
use crate::order::{enumerate_structure_maps, subset_label, Algebra, FinPoset, Structure, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Three {
    Zero,
    Bowtie,
    One,
}

impl Three {
    pub const ALL: [Three; 3] = [Three::Zero, Three::Bowtie, Three::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Three {
        Three::ALL[i]
    }

    /// `j: 3 -> 2⋉2`.
    pub fn j(self) -> (bool, bool) {
        match self {
            Three::Zero => (false, false),
            Three::Bowtie => (true, false),
            Three::One => (true, true),
        }
    }

    /// Inverse of `j`; `None` on `(0, 1)`, which is not in `2⋉2`.
    pub fn from_pair(first: bool, second: bool) -> Option<Three> {
        match (first, second) {
            (false, false) => Some(Three::Zero),
            (true, false) => Some(Three::Bowtie),
            (true, true) => Some(Three::One),
            (false, true) => None,
        }
    }

    pub fn coproduct(self, other: Three) -> Three {
        let (a, b) = (self.j(), other.j());
        Three::from_pair(a.0 || b.0, a.1 && b.1).expect("2⋉2 is closed under ⨿")
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Three::Zero => "0",
            Three::Bowtie => "⋈",
            Three::One => "1",
        }
    }
}

impl fmt::Display for Three {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `3` as a Plotkin algebra over the chain `0 < ⋈ < 1`.
pub fn three_algebra() -> Algebra {
    Algebra::new(FinPoset::from_leq(
        Three::ALL.iter().map(|t| t.symbol().to_string()).collect(),
        |a, b| a <= b,
    )
    .expect("chain"))
    .with_plotkin(
        Table::from_fn(3, |a, b| Three::from_index(a).coproduct(Three::from_index(b)).index()),
        Three::Bowtie.index(),
    )
    .expect("3 is a Plotkin algebra")
}

/// A pair of opens `U₁ ⊇ U₂` of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensPair {
    pub outer: ElemSet,
    pub inner: ElemSet,
}

impl LensPair {
    pub fn new(x: &FinPoset, outer: ElemSet, inner: ElemSet) -> Result<LensPair> {
        let full = x.full_set();
        if !outer.is_subset(&full) || !inner.is_subset(&full) {
            return Err(Error::UnknownElement("lens component outside the poset".into()));
        }
        if !x.is_upset(&outer) || !x.is_upset(&inner) {
            return Err(Error::SideConditionViolated("lens components must be opens".into()));
        }
        if !inner.is_subset(&outer) {
            return Err(Error::LensViolation(format!(
                "{} does not contain {}",
                subset_label(x.labels(), &outer),
                subset_label(x.labels(), &inner)
            )));
        }
        Ok(LensPair { outer, inner })
    }

    /// `(U₁ ∪ V₁, U₂ ∩ V₂)`.
    pub fn coproduct(&self, other: &LensPair) -> LensPair {
        LensPair {
            outer: self.outer.union(&other.outer),
            inner: self.inner.intersection(&other.inner),
        }
    }

    /// `⋈ = (X, ∅)`.
    pub fn bowtie(x: &FinPoset) -> LensPair {
        LensPair {
            outer: x.full_set(),
            inner: ElemSet::new(),
        }
    }

    pub fn render(&self, x: &FinPoset) -> String {
        format!(
            "({}, {})",
            subset_label(x.labels(), &self.outer),
            subset_label(x.labels(), &self.inner)
        )
    }
}

/// `f ↦ ({x | f(x) ≠ 0}, {x | f(x) = 1})`.
pub fn lens_of(f: &[Three]) -> LensPair {
    LensPair {
        outer: (0..f.len()).filter(|&x| f[x] != Three::Zero).collect(),
        inner: (0..f.len()).filter(|&x| f[x] == Three::One).collect(),
    }
}

/// Inverse of [`lens_of`]: `1` on `U₂`, `⋈` on `U₁ \ U₂`, `0` elsewhere.
pub fn map_of(n: usize, lens: &LensPair) -> Vec<Three> {
    (0..n)
        .map(|x| {
            Three::from_pair(lens.outer.contains(x), lens.inner.contains(x))
                .expect("inner is contained in outer")
        })
        .collect()
}

/// Every lens pair of `x`.
pub fn lens_pairs(x: &FinPoset) -> Result<Vec<LensPair>> {
    let opens = x.upsets()?;
    let mut out = Vec::new();
    for outer in opens.members() {
        for inner in opens.members() {
            if inner.is_subset(outer) {
                out.push(LensPair {
                    outer: outer.clone(),
                    inner: inner.clone(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `Dcpo(X, 3)`: the monotone maps `X -> 3`, indexed, with the pointwise
/// Plotkin-algebra structure.
#[derive(Clone, Debug)]
pub struct ThreeMaps {
    pub maps: Vec<Vec<Three>>,
    index: HashMap<Vec<Three>, usize>,
    algebra: Algebra,
}

impl ThreeMaps {
    pub fn new(x: &FinPoset) -> Result<ThreeMaps> {
        let three = three_algebra();
        let graphs = enumerate_structure_maps(
            &Algebra::new(x.clone()),
            &three,
            Structure::Monotone,
            DEFAULT_BUDGET,
        )?;
        let maps: Vec<Vec<Three>> = graphs
            .into_iter()
            .map(|g| g.into_iter().map(Three::from_index).collect())
            .collect();
        let index: HashMap<Vec<Three>, usize> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let labels = maps
            .iter()
            .map(|m| m.iter().map(|t| t.symbol()).collect::<String>())
            .collect();
        let poset = FinPoset::from_leq(labels, |a, b| {
            maps[a].iter().zip(&maps[b]).all(|(p, q)| p <= q)
        })?;
        let coproduct = Table::from_fn(maps.len(), |a, b| {
            let c: Vec<Three> = maps[a].iter().zip(&maps[b]).map(|(p, q)| p.coproduct(*q)).collect();
            index[&c]
        });
        let bowtie = index[&vec![Three::Bowtie; x.len()]];
        let algebra = Algebra::new(poset).with_plotkin(coproduct, bowtie)?;
        Ok(ThreeMaps {
            maps,
            index,
            algebra,
        })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn index_of(&self, f: &[Three]) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
}

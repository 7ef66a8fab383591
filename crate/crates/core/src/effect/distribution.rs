use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

use super::rat::{fraction_string, in_unit_interval, Rat};

/// A finitely supported probability distribution on `0..size` with exact
/// rational weights. Only nonzero weights are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution {
    size: usize,
    weights: BTreeMap<usize, Rat>,
}

impl Distribution {
    /// Checks nonnegativity and exact normalization. Repeated points are
    /// summed.
    pub fn new(size: usize, weights: impl IntoIterator<Item = (usize, Rat)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
        for (x, w) in weights {
            if x >= size {
                return Err(Error::UnknownElement(format!("point {x} of {size}")));
            }
            if w.is_negative() {
                return Err(Error::NegativeWeight(w.to_string()));
            }
            *map.entry(x).or_insert_with(Rat::zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        let total: Rat = map.values().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(total.to_string()));
        }
        Ok(Distribution { size, weights: map })
    }

    /// From a dense weight vector.
    pub fn from_dense(weights: &[Rat]) -> Result<Self> {
        Distribution::new(weights.len(), weights.iter().cloned().enumerate())
    }

    /// The point mass at `x`.
    pub fn dirac(size: usize, x: usize) -> Self {
        assert!(x < size, "point outside the carrier");
        Distribution {
            size,
            weights: BTreeMap::from([(x, Rat::one())]),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn weight(&self, x: usize) -> Rat {
        self.weights.get(&x).cloned().unwrap_or_else(Rat::zero)
    }

    /// Support points with their (nonzero) weights, in point order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.weights.iter().map(|(&x, w)| (x, w))
    }

    pub fn dense(&self) -> Vec<Rat> {
        (0..self.size).map(|x| self.weight(x)).collect()
    }

    /// `r·self + (1−r)·other`.
    pub fn convex(r: &Rat, a: &Distribution, b: &Distribution) -> Result<Distribution> {
        if a.size != b.size {
            return Err(Error::CarrierMismatch("convex combination of unrelated carriers".into()));
        }
        if !in_unit_interval(r) {
            return Err(Error::ScalarOutOfRange(r.to_string()));
        }
        let s = Rat::one() - r;
        let weights = a
            .support()
            .map(|(x, w)| (x, r * w))
            .chain(b.support().map(|(x, w)| (x, &s * w)));
        Distribution::new(a.size, weights)
    }

    /// Kleisli extension: `bind(f, ω)(y) = Σ_x f(x)(y)·ω(x)`.
    pub fn bind(&self, f: &[Distribution]) -> Result<Distribution> {
        if f.len() != self.size {
            return Err(Error::CarrierMismatch(format!(
                "Kleisli map has {} entries for a carrier of {}",
                f.len(),
                self.size
            )));
        }
        let target = f.first().map_or(0, |d| d.size);
        if f.iter().any(|d| d.size != target) {
            return Err(Error::CarrierMismatch("Kleisli map images differ in carrier".into()));
        }
        let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
        for (x, wx) in self.support() {
            for (y, wy) in f[x].support() {
                *out.entry(y).or_insert_with(Rat::zero) += wx * wy;
            }
        }
        Ok(Distribution {
            size: target,
            weights: out,
        })
    }

    /// `Σ_x p(x)·ω(x)`.
    pub fn expectation(&self, p: &[Rat]) -> Rat {
        self.support().map(|(x, w)| w * &p[x]).sum()
    }

    pub fn to_json(&self, labels: &[String]) -> Value {
        let map: Map<String, Value> = self
            .support()
            .map(|(x, w)| (labels[x].clone(), Value::String(fraction_string(w))))
            .collect();
        Value::Object(map)
    }

    pub fn render(&self, labels: &[String]) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|(x, w)| format!("{w}·{}", labels[x]))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.size).map(|i| i.to_string()).collect();
        f.write_str(&self.render(&labels))
    }
}

/// Every distribution on `0..size` whose weights have denominators dividing
/// some `d <= max_den`.
pub fn grid_distributions(size: usize, max_den: u32) -> Vec<Distribution> {
    fn compositions(total: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            compositions(total - k, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    if size == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for d in 1..=i64::from(max_den.max(1)) {
        let mut comps = Vec::new();
        compositions(d, size, &mut Vec::new(), &mut comps);
        for c in comps {
            let weights = c.iter().enumerate().map(|(x, &k)| (x, super::rat::rat(k, d)));
            out.push(Distribution::new(size, weights).expect("normalized by construction"));
        }
    }
    out.sort();
    out.dedup();
    out
}

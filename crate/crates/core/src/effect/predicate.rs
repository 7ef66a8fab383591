use std::fmt;

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::order::FinSet;

use super::rat::{check_unit, fraction_string, in_unit_interval, one_minus, parse_rat, Rat};

/// A map from a finite carrier into `[0,1]`: an element of the effect
/// module `[0,1]^X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuzzyPredicate {
    carrier: FinSet,
    values: Vec<Rat>,
}

impl FuzzyPredicate {
    pub fn new(carrier: FinSet, values: Vec<Rat>) -> Result<Self> {
        if values.len() != carrier.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} values for a carrier of {}",
                values.len(),
                carrier.len()
            )));
        }
        for v in &values {
            check_unit(v)?;
        }
        Ok(FuzzyPredicate { carrier, values })
    }

    pub fn constant(carrier: &FinSet, r: Rat) -> Result<Self> {
        check_unit(&r)?;
        Ok(FuzzyPredicate {
            values: vec![r; carrier.len()],
            carrier: carrier.clone(),
        })
    }

    /// `1_U`.
    pub fn indicator(carrier: &FinSet, u: &ElemSet) -> Self {
        let values = (0..carrier.len())
            .map(|i| if u.contains(i) { Rat::one() } else { Rat::zero() })
            .collect();
        FuzzyPredicate {
            carrier: carrier.clone(),
            values,
        }
    }

    /// Builds `x ↦ f(x)`, checking every value lies in `[0,1]`.
    pub fn from_fn(carrier: &FinSet, f: impl Fn(usize) -> Rat) -> Result<Self> {
        FuzzyPredicate::new(carrier.clone(), (0..carrier.len()).map(f).collect())
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Rat {
        &self.values[x]
    }

    fn same_carrier(&self, other: &FuzzyPredicate) -> Result<()> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(
                "predicates live on different carriers".into(),
            ))
        }
    }

    /// `p ⊥ q` iff `p(x) + q(x) <= 1` everywhere.
    pub fn orthogonal(&self, other: &FuzzyPredicate) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| in_unit_interval(&(a + b))))
    }

    /// The partial sum `p ⊕ q`; `None` when undefined.
    pub fn ovee(&self, other: &FuzzyPredicate) -> Result<Option<FuzzyPredicate>> {
        if !self.orthogonal(other)? {
            return Ok(None);
        }
        Ok(Some(FuzzyPredicate {
            carrier: self.carrier.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }))
    }

    /// `p⊥(x) = 1 - p(x)`.
    pub fn orth(&self) -> FuzzyPredicate {
        FuzzyPredicate {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(one_minus).collect(),
        }
    }

    /// `(r·p)(x) = r·p(x)`.
    pub fn scalar(&self, r: &Rat) -> Result<FuzzyPredicate> {
        if !in_unit_interval(r) {
            return Err(Error::ScalarOutOfRange(r.to_string()));
        }
        Ok(FuzzyPredicate {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|v| r * v).collect(),
        })
    }

    pub fn leq(&self, other: &FuzzyPredicate) -> bool {
        self.carrier == other.carrier && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Parses `{s0: 1/3, s1: 2/3}` against `carrier`; missing states are 0.
    pub fn parse(carrier: &FinSet, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Syntax {
                line: 1,
                column: 1,
                message: "expected `{state: value, ...}`".into(),
            })?;
        let mut values = vec![Rat::zero(); carrier.len()];
        for entry in inner.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (name, value) = entry.rsplit_once(':').ok_or_else(|| Error::Syntax {
                line: 1,
                column: 1,
                message: format!("entry `{entry}` lacks `:`"),
            })?;
            values[carrier.index_of(name.trim())?] = parse_rat(value)?;
        }
        FuzzyPredicate::new(carrier.clone(), values)
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .carrier
            .elements()
            .iter()
            .zip(&self.values)
            .map(|(k, v)| (k.clone(), Value::String(fraction_string(v))))
            .collect();
        Value::Object(map)
    }
}

impl fmt::Display for FuzzyPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .carrier
            .elements()
            .iter()
            .zip(&self.values)
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::rat::{int, rat};

    fn x2() -> FinSet {
        FinSet::numbered(2)
    }

    #[test]
    fn ovee_of_constants() {
        let half = FuzzyPredicate::constant(&x2(), rat(1, 2)).unwrap();
        let third = FuzzyPredicate::constant(&x2(), rat(1, 3)).unwrap();
        let two_thirds = FuzzyPredicate::constant(&x2(), rat(2, 3)).unwrap();
        assert_eq!(
            half.ovee(&third).unwrap().unwrap(),
            FuzzyPredicate::constant(&x2(), rat(5, 6)).unwrap()
        );
        assert_eq!(half.ovee(&two_thirds).unwrap(), None);
    }

    #[test]
    fn ovee_with_orth_is_one() {
        let p = FuzzyPredicate::new(x2(), vec![rat(1, 7), rat(5, 9)]).unwrap();
        assert_eq!(
            p.ovee(&p.orth()).unwrap().unwrap(),
            FuzzyPredicate::constant(&x2(), int(1)).unwrap()
        );
    }

    #[test]
    fn orth_and_scalars() {
        let zero = FuzzyPredicate::constant(&x2(), int(0)).unwrap();
        assert_eq!(zero.orth(), FuzzyPredicate::constant(&x2(), int(1)).unwrap());
        let p = FuzzyPredicate::new(x2(), vec![rat(1, 3), rat(1, 2)]).unwrap();
        assert_eq!(p.scalar(&int(1)).unwrap(), p);
        let ind = FuzzyPredicate::indicator(&x2(), &ElemSet::singleton(0));
        assert_eq!(ind.scalar(&rat(1, 2)).unwrap().value(0), &rat(1, 2));
        assert!(matches!(p.scalar(&rat(3, 2)), Err(Error::ScalarOutOfRange(_))));
    }

    #[test]
    fn carrier_checks() {
        let p = FuzzyPredicate::constant(&x2(), int(0)).unwrap();
        let q = FuzzyPredicate::constant(&FinSet::numbered(3), int(0)).unwrap();
        assert!(matches!(p.ovee(&q), Err(Error::CarrierMismatch(_))));
        assert!(matches!(
            FuzzyPredicate::new(x2(), vec![int(0), rat(4, 3)]),
            Err(Error::OutOfUnitInterval(_))
        ));
    }

    #[test]
    fn literal_and_json() {
        let x = FinSet::new(["s0", "s1"]).unwrap();
        let p = FuzzyPredicate::parse(&x, "{s0: 1/3, s1: 2/3}").unwrap();
        assert_eq!(p.values(), &[rat(1, 3), rat(2, 3)]);
        assert_eq!(p.to_json().to_string(), r#"{"s0":"1/3","s1":"2/3"}"#);
    }
}

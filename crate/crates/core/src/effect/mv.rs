//! Total MV operations on `[0,1]`, next to the partial effect sum.
//!
//! Both presentations are kept: `ovee` is partial, `plus`/`minus` are
//! total. The total ones are defined from the partial one exactly as
//! `x + y = x ⊕ (x⊥ ∧ y)` and `x − y = (x⊥ + y)⊥`.

use num_traits::{One, Zero};

use crate::error::Result;

use super::rat::{check_unit, in_unit_interval, one_minus, Rat};

/// `x ⊕ y` when `x + y <= 1`.
pub fn ovee(x: &Rat, y: &Rat) -> Option<Rat> {
    let s = x + y;
    in_unit_interval(&s).then_some(s)
}

pub fn orth(x: &Rat) -> Rat {
    one_minus(x)
}

pub fn join(x: &Rat, y: &Rat) -> Rat {
    x.max(y).clone()
}

pub fn meet(x: &Rat, y: &Rat) -> Rat {
    x.min(y).clone()
}

/// `x + y = x ⊕ (x⊥ ∧ y)`.
pub fn plus(x: &Rat, y: &Rat) -> Rat {
    ovee(x, &meet(&orth(x), y)).expect("x and x⊥ ∧ y are orthogonal")
}

/// `x − y = (x⊥ + y)⊥`.
pub fn minus(x: &Rat, y: &Rat) -> Rat {
    orth(&plus(&orth(x), y))
}

/// Truncated sum `min(1, x + y)`, computed arithmetically.
pub fn truncated_plus(x: &Rat, y: &Rat) -> Rat {
    (x + y).min(Rat::one())
}

/// Truncated difference `max(0, x − y)`, computed arithmetically.
pub fn truncated_minus(x: &Rat, y: &Rat) -> Rat {
    (x - y).max(Rat::zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvOps {
    pub truncated_plus: Rat,
    pub truncated_minus: Rat,
    pub join: Rat,
    pub meet: Rat,
}

/// All four MV operations on `a, b ∈ [0,1]`. The truncated values are
/// cross-checked against the `⊕`-based definitions.
pub fn mv_ops(a: &Rat, b: &Rat) -> Result<MvOps> {
    check_unit(a)?;
    check_unit(b)?;
    let ops = MvOps {
        truncated_plus: truncated_plus(a, b),
        truncated_minus: truncated_minus(a, b),
        join: join(a, b),
        meet: meet(a, b),
    };
    assert_eq!(ops.truncated_plus, plus(a, b));
    assert_eq!(ops.truncated_minus, minus(a, b));
    Ok(ops)
}

/// Outcome of one MV identity over a probe grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<(Rat, Rat)>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks the MV identities on every pair of `grid`:
/// `a ∨ b = (a − b) + b`, `(x ∨ y)⊥ ⊕ x = y⊥ ⊕ (x ∧ y)` (both sides defined),
/// and agreement of the truncated and `⊕`-defined operations.
pub fn check_mv_identities(grid: &[Rat]) -> Vec<IdentityCheck> {
    type Law = fn(&Rat, &Rat) -> bool;
    let laws: [(&'static str, Law); 4] = [
        ("join = (a - b) + b", |a, b| join(a, b) == plus(&minus(a, b), b)),
        ("(x v y)' + x = y' + (x ^ y)", |x, y| {
            let lhs = ovee(&orth(&join(x, y)), x);
            let rhs = ovee(&orth(y), &meet(x, y));
            lhs.is_some() && lhs == rhs
        }),
        ("truncated plus = x + (x' ^ y)", |a, b| {
            truncated_plus(a, b) == plus(a, b)
        }),
        ("truncated minus = (x' + y)'", |a, b| {
            truncated_minus(a, b) == minus(a, b)
        }),
    ];
    laws.iter()
        .map(|&(name, law)| {
            let counterexample = grid
                .iter()
                .flat_map(|a| grid.iter().map(move |b| (a, b)))
                .find(|(a, b)| !law(a, b))
                .map(|(a, b)| (a.clone(), b.clone()));
            IdentityCheck {
                name,
                cases: grid.len() * grid.len(),
                counterexample,
            }
        })
        .collect()
}

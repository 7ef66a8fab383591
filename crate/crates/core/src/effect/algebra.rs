//! Effect algebras given by a partial sum, an orthosupplement and a
//! finite probe set, and a validator for their axioms.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::bitset::{all_subsets, ElemSet};
use crate::exec::{self, Strategy};
use crate::order::{subset_label, FinSet};

use super::predicate::FuzzyPredicate;
use super::rat::{in_unit_interval, one_minus, unit_grid, Rat};

pub trait EffectAlgebra: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// The partial sum; `None` when the arguments are not orthogonal.
    fn ovee(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn orth(&self, a: &Self::Elem) -> Self::Elem;
    /// The elements the axioms are checked on.
    fn probes(&self) -> Vec<Self::Elem>;
    /// How an element is printed in counterexamples.
    fn show(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
    /// Scalar action `r·a`, for effect modules.
    fn scalar(&self, _r: &Rat, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }
    /// Scalars to probe the module axioms with (empty: not a module).
    fn scalar_probes(&self) -> Vec<Rat> {
        Vec::new()
    }
}

/// Result of one axiom over the probes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectReport {
    pub name: String,
    pub probes: usize,
    pub axioms: Vec<AxiomResult>,
}

impl EffectReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == name)
    }
}

pub const COMMUTATIVITY: &str = "commutativity";
pub const ASSOCIATIVITY: &str = "associativity";
pub const ZERO_UNIT: &str = "zero is a unit";
pub const ORTHOSUPPLEMENT: &str = "x + x' = 1";
pub const UNIQUE_SUPPLEMENT: &str = "orthosupplement unique";
pub const ZERO_ONE: &str = "x orthogonal to 1 implies x = 0";
pub const SCALAR_UNIT: &str = "1 r = r";
pub const SCALAR_ADDITIVE: &str = "r(a + b) = ra + rb";
pub const SCALAR_SUM: &str = "(r + s)a = ra + sa";
pub const SCALAR_MULT: &str = "(rs)a = r(sa)";

/// Checks every effect-algebra axiom (and the module axioms when the
/// instance has scalars) on the probe set. Failures carry a witness.
pub fn validate_effect_algebra<E: EffectAlgebra>(inst: &E, strategy: Strategy) -> EffectReport {
    let xs = inst.probes();
    let n = xs.len();
    let zero = inst.zero();
    let one = inst.one();

    let pairwise = |law: &(dyn Fn(&E::Elem, &E::Elem) -> bool + Sync)| -> Option<String> {
        exec::find_first(strategy, 0..n, |i| {
            xs.iter()
                .find(|b| !law(&xs[i], b))
                .map(|b| format!("a = {}, b = {}", inst.show(&xs[i]), inst.show(b)))
        })
    };
    let single = |law: &dyn Fn(&E::Elem) -> bool| -> Option<String> {
        xs.iter().find(|a| !law(a)).map(|a| format!("a = {}", inst.show(a)))
    };

    let mut axioms = Vec::new();
    let mut push = |axiom: &'static str, counterexample: Option<String>| {
        axioms.push(AxiomResult {
            axiom,
            passed: counterexample.is_none(),
            counterexample,
        })
    };

    push(
        COMMUTATIVITY,
        pairwise(&|a, b| inst.ovee(a, b) == inst.ovee(b, a)),
    );
    let assoc = exec::find_first(strategy, 0..n, |i| {
        let a = &xs[i];
        for b in &xs {
            for c in &xs {
                let Some(bc) = inst.ovee(b, c) else { continue };
                let Some(lhs) = inst.ovee(a, &bc) else { continue };
                let rhs = inst.ovee(a, b).and_then(|ab| inst.ovee(&ab, c));
                if rhs.as_ref() != Some(&lhs) {
                    return Some(format!("a = {}, b = {}, c = {}", inst.show(a), inst.show(b), inst.show(c)));
                }
            }
        }
        None
    });
    push(ASSOCIATIVITY, assoc);
    push(
        ZERO_UNIT,
        single(&|a| inst.ovee(&zero, a).as_ref() == Some(a)),
    );
    push(
        ORTHOSUPPLEMENT,
        single(&|a| inst.ovee(a, &inst.orth(a)).as_ref() == Some(&one)),
    );
    push(
        UNIQUE_SUPPLEMENT,
        pairwise(&|a, b| inst.ovee(a, b).as_ref() != Some(&one) || *b == inst.orth(a)),
    );
    push(
        ZERO_ONE,
        single(&|a| inst.ovee(a, &one).is_none() || *a == zero),
    );

    let scalars = inst.scalar_probes();
    if !scalars.is_empty() {
        let act = |r: &Rat, a: &E::Elem| inst.scalar(r, a).expect("scalar in [0,1]");
        push(
            SCALAR_UNIT,
            single(&|a| act(&Rat::one(), a) == *a),
        );
        let additive = scalars.iter().find_map(|r| {
            pairwise(&|a, b| match inst.ovee(a, b) {
                None => true,
                Some(ab) => inst.ovee(&act(r, a), &act(r, b)) == Some(act(r, &ab)),
            })
            .map(|w| format!("r = {r}, {w}"))
        });
        push(SCALAR_ADDITIVE, additive);
        let sums = scalars.iter().find_map(|r| {
            scalars.iter().find_map(|s| {
                let rs = r + s;
                if !in_unit_interval(&rs) {
                    return None;
                }
                single(&|a| inst.ovee(&act(r, a), &act(s, a)) == Some(act(&rs, a)))
                    .map(|w| format!("r = {r}, s = {s}, {w}"))
            })
        });
        push(SCALAR_SUM, sums);
        let mult = scalars.iter().find_map(|r| {
            scalars.iter().find_map(|s| {
                single(&|a| act(&(r * s), a) == act(r, &act(s, a)))
                    .map(|w| format!("r = {r}, s = {s}, {w}"))
            })
        });
        push(SCALAR_MULT, mult);
    }

    EffectReport {
        name: inst.name(),
        probes: n,
        axioms,
    }
}

/// The Boolean algebra `P(X)`: disjoint union and complement.
#[derive(Clone, Debug)]
pub struct PowersetEffect {
    pub size: usize,
}

impl EffectAlgebra for PowersetEffect {
    type Elem = ElemSet;

    fn name(&self) -> String {
        format!("P({} points)", self.size)
    }
    fn zero(&self) -> ElemSet {
        ElemSet::new()
    }
    fn one(&self) -> ElemSet {
        ElemSet::full(self.size)
    }
    fn ovee(&self, a: &ElemSet, b: &ElemSet) -> Option<ElemSet> {
        (!a.intersects(b)).then(|| a.union(b))
    }
    fn orth(&self, a: &ElemSet) -> ElemSet {
        a.complement(self.size)
    }
    fn probes(&self) -> Vec<ElemSet> {
        all_subsets(self.size).collect()
    }
    fn show(&self, a: &ElemSet) -> String {
        let names: Vec<String> = (0..self.size).map(|i| i.to_string()).collect();
        subset_label(&names, a)
    }
}

/// `[0,1]` with the partial sum, probed on a rational grid.
#[derive(Clone, Debug)]
pub struct UnitInterval {
    pub max_den: u32,
}

impl EffectAlgebra for UnitInterval {
    type Elem = Rat;

    fn name(&self) -> String {
        format!("[0,1] (grid, denominators <= {})", self.max_den)
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn ovee(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        super::mv::ovee(a, b)
    }
    fn orth(&self, a: &Rat) -> Rat {
        one_minus(a)
    }
    fn probes(&self) -> Vec<Rat> {
        unit_grid(self.max_den)
    }
    fn show(&self, a: &Rat) -> String {
        a.to_string()
    }
    fn scalar(&self, r: &Rat, a: &Rat) -> Option<Rat> {
        in_unit_interval(r).then(|| r * a)
    }
    fn scalar_probes(&self) -> Vec<Rat> {
        unit_grid(self.max_den)
    }
}

/// `[0,1]` with the total truncated sum in place of the partial one. This
/// is not an effect algebra.
#[derive(Clone, Debug)]
pub struct TruncatedUnitInterval {
    pub max_den: u32,
}

impl EffectAlgebra for TruncatedUnitInterval {
    type Elem = Rat;

    fn name(&self) -> String {
        format!("[0,1] with truncated sum (denominators <= {})", self.max_den)
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn ovee(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        Some(super::mv::truncated_plus(a, b))
    }
    fn orth(&self, a: &Rat) -> Rat {
        one_minus(a)
    }
    fn probes(&self) -> Vec<Rat> {
        unit_grid(self.max_den)
    }
    fn show(&self, a: &Rat) -> String {
        a.to_string()
    }
}

/// Fuzzy predicates `[0,1]^X`, probed on all grid-valued predicates.
#[derive(Clone, Debug)]
pub struct FuzzyPredicates {
    pub carrier: FinSet,
    pub max_den: u32,
}

impl EffectAlgebra for FuzzyPredicates {
    type Elem = FuzzyPredicate;

    fn name(&self) -> String {
        format!(
            "[0,1]^X, |X| = {} (denominators <= {})",
            self.carrier.len(),
            self.max_den
        )
    }
    fn zero(&self) -> FuzzyPredicate {
        FuzzyPredicate::constant(&self.carrier, Rat::zero()).unwrap()
    }
    fn one(&self) -> FuzzyPredicate {
        FuzzyPredicate::constant(&self.carrier, Rat::one()).unwrap()
    }
    fn ovee(&self, a: &FuzzyPredicate, b: &FuzzyPredicate) -> Option<FuzzyPredicate> {
        a.ovee(b).expect("same carrier")
    }
    fn orth(&self, a: &FuzzyPredicate) -> FuzzyPredicate {
        a.orth()
    }
    fn show(&self, a: &FuzzyPredicate) -> String {
        a.to_string()
    }
    fn probes(&self) -> Vec<FuzzyPredicate> {
        let grid = unit_grid(self.max_den);
        let n = self.carrier.len();
        let total = grid.len().pow(n as u32);
        (0..total)
            .map(|mut code| {
                let values = (0..n)
                    .map(|_| {
                        let v = grid[code % grid.len()].clone();
                        code /= grid.len();
                        v
                    })
                    .collect();
                FuzzyPredicate::new(self.carrier.clone(), values).unwrap()
            })
            .collect()
    }
    fn scalar(&self, r: &Rat, a: &FuzzyPredicate) -> Option<FuzzyPredicate> {
        a.scalar(r).ok()
    }
    fn scalar_probes(&self) -> Vec<Rat> {
        unit_grid(self.max_den.min(4))
    }
}

//! The monad-law suite.
//!
//! For every object triple `(X, Y, Z)` within the configured size, the
//! suite checks
//!
//! * right unit: `bind(η, m) = m` for every `m ∈ T(X)`;
//! * left unit: `bind(f, η(x)) = f(x)` for every `f: X -> T(Y)`, `x ∈ X`;
//! * associativity: `bind(g, bind(f, m)) = bind(bind(g) ∘ f, m)`;
//! * closure: units and binds land in `T(-)`.
//!
//! Each quantifier is exhausted when the number of cases fits the budget,
//! and sampled from a seeded generator otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exec::{self, Strategy};
use crate::order::{catalog, FinPoset, DEFAULT_BUDGET};

use super::{resolve, ArrowSpace, Monad};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawConfig {
    /// Objects of every size `0..=max_size` are used.
    pub max_size: usize,
    /// Largest case count checked exhaustively for one law and objects.
    pub exhaustive_budget: u128,
    /// Cases drawn when the budget is exceeded.
    pub samples: usize,
    pub seed: u64,
    /// Search budget for enumerating monotone Kleisli arrows.
    pub arrow_budget: u64,
}

impl LawConfig {
    pub fn new(max_size: usize) -> Self {
        LawConfig {
            max_size,
            exhaustive_budget: 1 << 16,
            samples: 2000,
            seed: 0x5eed,
            arrow_budget: DEFAULT_BUDGET,
        }
    }

    pub fn exhaustive_budget(mut self, budget: u128) -> Self {
        self.exhaustive_budget = budget;
        self
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub const RIGHT_UNIT: &str = "right unit";
pub const LEFT_UNIT: &str = "left unit";
pub const ASSOCIATIVITY: &str = "associativity";
pub const CLOSURE: &str = "closure";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: &'static str,
    pub objects: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawTally {
    pub law: &'static str,
    pub cases: u128,
    /// False when at least one object tuple was sampled.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub monad: String,
    pub max_size: usize,
    pub objects: usize,
    pub seed: u64,
    /// False when `T(X)` itself was only probed.
    pub elements_exhaustive: bool,
    pub tallies: Vec<LawTally>,
    pub failures: Vec<LawFailure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn sampled(&self) -> bool {
        !self.elements_exhaustive || self.tallies.iter().any(|t| !t.exhaustive)
    }

    fn tally(&mut self, law: &'static str, cases: u128, exhaustive: bool) {
        if let Some(t) = self.tallies.iter_mut().find(|t| t.law == law) {
            t.cases += cases;
            t.exhaustive &= exhaustive;
        } else {
            self.tallies.push(LawTally {
                law,
                cases,
                exhaustive,
            });
        }
    }
}

/// The objects the suite ranges over: discrete sets for set monads, every
/// poset up to isomorphism otherwise.
pub fn law_objects<M: Monad>(m: &M, max_size: usize) -> Vec<FinPoset> {
    if m.on_sets() {
        (0..=max_size).map(FinPoset::discrete_n).collect()
    } else {
        catalog::posets_up_to(max_size)
    }
}

/// Case indices for one law: all of `0..total`, or a seeded sample.
fn case_indices(total: u128, cfg: &LawConfig, salt: u64) -> (Vec<u128>, bool) {
    if total <= cfg.exhaustive_budget {
        ((0..total).collect(), true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        ((0..cfg.samples).map(|_| rng.gen_range(0..total)).collect(), false)
    }
}

pub fn check_laws<M: Monad>(m: &M, cfg: &LawConfig, strategy: Strategy) -> Result<LawReport> {
    let objects = law_objects(m, cfg.max_size);
    let mut report = LawReport {
        monad: m.name().to_string(),
        max_size: cfg.max_size,
        objects: objects.len(),
        seed: cfg.seed,
        elements_exhaustive: true,
        tallies: Vec::new(),
        failures: Vec::new(),
    };
    let mut elems = Vec::with_capacity(objects.len());
    for x in &objects {
        let e = m.elements(x)?;
        report.elements_exhaustive &= e.exhaustive;
        elems.push(e.items);
    }
    let name = |x: &FinPoset| format!("{{{}}}", x.labels().join(","));
    let mut salt = 0u64;

    // closure of units and right unit
    for (xi, x) in objects.iter().enumerate() {
        let tx = &elems[xi];
        let units: Vec<M::Elem> = (0..x.len()).map(|a| m.unit(x, a)).collect();
        report.tally(CLOSURE, x.len() as u128, true);
        if let Some(a) = (0..x.len()).find(|&a| !m.contains(x, &units[a])) {
            report.failures.push(LawFailure {
                law: CLOSURE,
                objects: name(x),
                witness: format!("unit({}) = {}", x.label(a), m.render(x, &units[a])),
            });
        }
        report.tally(RIGHT_UNIT, tx.len() as u128, true);
        let bad = exec::find_first(strategy, 0..tx.len(), |i| {
            let got = m.bind(x, x, &units, &tx[i]);
            (got != tx[i]).then(|| {
                format!("m = {}, bind(unit, m) = {}", m.render(x, &tx[i]), m.render(x, &got))
            })
        });
        if let Some(witness) = bad {
            report.failures.push(LawFailure {
                law: RIGHT_UNIT,
                objects: name(x),
                witness,
            });
        }
    }

    // left unit
    let mut spaces = Vec::with_capacity(objects.len() * objects.len());
    for x in &objects {
        for (yi, y) in objects.iter().enumerate() {
            let ty = &elems[yi];
            let space = ArrowSpace::new(m, x, y, ty, cfg.arrow_budget)?;
            let total = space.count().saturating_mul(x.len() as u128);
            salt += 1;
            let (cases, exhaustive) = case_indices(total, cfg, salt);
            report.tally(LEFT_UNIT, cases.len() as u128, exhaustive);
            let bad = exec::find_first(strategy, 0..cases.len(), |c| {
                let code = cases[c];
                let a = (code % x.len() as u128) as usize;
                let f = resolve(ty, &space.get(code / x.len() as u128));
                let got = m.bind(x, y, &f, &m.unit(x, a));
                (got != f[a]).then(|| {
                    format!(
                        "x = {}, f(x) = {}, bind(f, unit(x)) = {}",
                        x.label(a),
                        m.render(y, &f[a]),
                        m.render(y, &got)
                    )
                })
            });
            if let Some(witness) = bad {
                report.failures.push(LawFailure {
                    law: LEFT_UNIT,
                    objects: format!("{} -> {}", name(x), name(y)),
                    witness,
                });
            }
            spaces.push(space);
        }
    }

    // associativity and closure of bind
    let k = objects.len();
    for xi in 0..k {
        for yi in 0..k {
            for zi in 0..k {
                let (x, y, z) = (&objects[xi], &objects[yi], &objects[zi]);
                let (tx, ty, tz) = (&elems[xi], &elems[yi], &elems[zi]);
                let (sf, sg) = (&spaces[xi * k + yi], &spaces[yi * k + zi]);
                let total = (tx.len() as u128)
                    .saturating_mul(sf.count())
                    .saturating_mul(sg.count());
                if total == 0 {
                    continue;
                }
                salt += 1;
                let (cases, exhaustive) = case_indices(total, cfg, salt);
                report.tally(ASSOCIATIVITY, cases.len() as u128, exhaustive);
                let bad = exec::find_first(strategy, 0..cases.len(), |c| {
                    let mut code = cases[c];
                    let mi = (code % tx.len() as u128) as usize;
                    code /= tx.len() as u128;
                    let f = resolve(ty, &sf.get(code % sf.count()));
                    let g = resolve(tz, &sg.get(code / sf.count()));
                    let inner = m.bind(x, y, &f, &tx[mi]);
                    if !m.contains(y, &inner) {
                        return Some((CLOSURE, format!("bind(f, m) = {}", m.render(y, &inner))));
                    }
                    let lhs = m.bind(y, z, &g, &inner);
                    let gf: Vec<M::Elem> = f.iter().map(|fx| m.bind(y, z, &g, fx)).collect();
                    let rhs = m.bind(x, z, &gf, &tx[mi]);
                    (lhs != rhs).then(|| {
                        (
                            ASSOCIATIVITY,
                            format!(
                                "m = {}, bind(g, bind(f, m)) = {}, bind(g . f, m) = {}",
                                m.render(x, &tx[mi]),
                                m.render(z, &lhs),
                                m.render(z, &rhs)
                            ),
                        )
                    })
                });
                if let Some((law, witness)) = bad {
                    report.failures.push(LawFailure {
                        law,
                        objects: format!("{} -> {} -> {}", name(x), name(y), name(z)),
                        witness,
                    });
                }
            }
        }
    }
    Ok(report)
}

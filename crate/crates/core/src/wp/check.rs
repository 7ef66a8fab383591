//! Cross-checks of the compositional wp against the whole-program
//! denotation, and healthiness properties of each flavor.

use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElemSet;
use crate::effect::rat::{rat, unit_grid};
use crate::effect::{FuzzyPredicate, Rat};
use crate::error::{Error, Result};
use crate::transformers::{box_wp, diamond_wp, expectation_pred};

use super::semantics::{denote_dist, denote_pow, Compiled, Flavor, Mode, Predicate};
use super::state::StateSpace;
use super::syntax::Program;

/// Most singleton probes used per program.
const ATOMIC_PROBES: usize = 16;
const RANDOM_PROBES: usize = 6;

/// Constant, atomic and seeded random posts for a state space.
pub fn default_probes(space: &StateSpace, mode: Mode, seed: u64) -> Vec<Predicate> {
    let n = space.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms: Vec<usize> = if n <= ATOMIC_PROBES {
        (0..n).collect()
    } else {
        let mut picked = sample(&mut rng, n, ATOMIC_PROBES).into_vec();
        picked.sort_unstable();
        picked
    };
    let grid = unit_grid(6);
    match mode {
        Mode::Pow => {
            let mut out = vec![Predicate::Set(ElemSet::new()), Predicate::Set(ElemSet::full(n))];
            out.extend(atoms.into_iter().map(|s| Predicate::Set(ElemSet::singleton(s))));
            for _ in 0..RANDOM_PROBES {
                out.push(Predicate::Set((0..n).filter(|_| rng.gen_bool(0.5)).collect()));
            }
            out
        }
        Mode::Dist => {
            let constant = |r: Rat| Predicate::Fuzzy(FuzzyPredicate::constant(space.set(), r).expect("in [0,1]"));
            let mut out = vec![constant(Rat::zero()), constant(Rat::one()), constant(rat(1, 2))];
            out.extend(
                atoms
                    .into_iter()
                    .map(|s| Predicate::Fuzzy(FuzzyPredicate::indicator(space.set(), &ElemSet::singleton(s)))),
            );
            for _ in 0..RANDOM_PROBES {
                let values = (0..n).map(|_| grid[rng.gen_range(0..grid.len())].clone()).collect();
                out.push(Predicate::Fuzzy(
                    FuzzyPredicate::new(space.set().clone(), values).expect("grid values lie in [0,1]"),
                ));
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpMismatch {
    pub probe: usize,
    pub state: String,
    pub compositional: String,
    pub denotational: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpCheck {
    pub flavor: Flavor,
    pub probes: usize,
    pub states: usize,
    pub mismatches: Vec<WpMismatch>,
}

impl WpCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the structural wp with the transformer of the whole
/// denotation (`□`, `◇` or expectation) on every probe.
pub fn check_roundtrip(p: &Program, flavor: Flavor, probes: &[Predicate]) -> Result<WpCheck> {
    let space = StateSpace::of(p)?;
    type Transformer = Box<dyn Fn(&Predicate) -> Result<Predicate>>;
    let whole: Transformer = match flavor {
        Flavor::Demonic | Flavor::Angelic => {
            let g = denote_pow(p)?;
            Box::new(move |q| match q {
                Predicate::Set(q) if flavor == Flavor::Demonic => Ok(Predicate::Set(box_wp(g.images(), q))),
                Predicate::Set(q) => Ok(Predicate::Set(diamond_wp(g.images(), q))),
                Predicate::Fuzzy(_) => Err(Error::ModeMismatch("fuzzy probe for a pow flavor".into())),
            })
        }
        Flavor::Expectation => {
            let g = denote_dist(p)?;
            let t = expectation_pred(space.set(), space.set(), g.images())?;
            Box::new(move |q| match q {
                Predicate::Fuzzy(q) => t.apply(q).map(Predicate::Fuzzy),
                Predicate::Set(_) => Err(Error::ModeMismatch("set probe for expectation".into())),
            })
        }
    };
    let body = Compiled::new(&space, &p.body)?;
    let mut mismatches = Vec::new();
    for (i, q) in probes.iter().enumerate() {
        let (a, b) = (body.wp(&space, flavor, q)?, whole(q)?);
        if let Some(s) = (0..space.len()).find(|&s| a.value(s) != b.value(s)) {
            mismatches.push(WpMismatch {
                probe: i,
                state: space.label(s).to_string(),
                compositional: a.render_value(s),
                denotational: b.render_value(s),
            });
        }
    }
    Ok(WpCheck {
        flavor,
        probes: probes.len(),
        states: space.len(),
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub cases: usize,
    pub witness: Option<String>,
}

impl InvariantCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> InvariantCheck {
        InvariantCheck {
            name: self.name,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

/// Probe pairs `(i, i+1)` and `(i, n-1-i)`.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| [(i, (i + 1) % n), (i, n - 1 - i)])
}

fn first_difference(space: &StateSpace, a: &Predicate, b: &Predicate) -> Option<String> {
    (0..space.len())
        .find(|&s| a.value(s) != b.value(s))
        .map(|s| format!("{}: {} vs {}", space.label(s), a.render_value(s), b.render_value(s)))
}

/// Healthiness of the flavors of `mode` on the given probes.
///
/// `pow`: demonic wp preserves meets and the true post, angelic wp
/// preserves joins and the false post, both are monotone, and
/// `demonic(Q) = ¬angelic(¬Q)`.
/// `dist`: expectation wp is additive on orthogonal posts, homogeneous,
/// normalized and monotone.
pub fn check_healthiness(p: &Program, mode: Mode, probes: &[Predicate]) -> Result<Vec<InvariantCheck>> {
    let space = StateSpace::of(p)?;
    let n = space.len();
    let body = Compiled::new(&space, &p.body)?;
    let w = |flavor, q: &Predicate| body.wp(&space, flavor, q);
    let sets: Vec<&ElemSet> = probes
        .iter()
        .filter_map(|q| match q {
            Predicate::Set(s) => Some(s),
            _ => None,
        })
        .collect();
    let fuzzies: Vec<&FuzzyPredicate> = probes
        .iter()
        .filter_map(|q| match q {
            Predicate::Fuzzy(f) => Some(f),
            _ => None,
        })
        .collect();
    let foreign = match mode {
        Mode::Pow => !fuzzies.is_empty(),
        Mode::Dist => !sets.is_empty(),
    };
    if foreign {
        return Err(Error::ModeMismatch(format!("probes do not all belong to {mode} mode")));
    }
    let set = |u: ElemSet| Predicate::Set(u);
    let mut out = Vec::new();
    match mode {
        Mode::Pow => {
            let (mut meet, mut join, mut top, mut bottom) = (
                Tally::new("demonic-meets"),
                Tally::new("angelic-joins"),
                Tally::new("demonic-true"),
                Tally::new("angelic-false"),
            );
            let (mut duality, mut monotone) = (Tally::new("duality"), Tally::new("monotone"));
            let full = set(ElemSet::full(n));
            let t = w(Flavor::Demonic, &full)?;
            top.record(t == full, || first_difference(&space, &t, &full).unwrap_or_default());
            let empty = set(ElemSet::new());
            let b = w(Flavor::Angelic, &empty)?;
            bottom.record(b == empty, || first_difference(&space, &b, &empty).unwrap_or_default());
            let mut demonic = Vec::with_capacity(sets.len());
            let mut angelic = Vec::with_capacity(sets.len());
            for q in &sets {
                demonic.push(w(Flavor::Demonic, &set((*q).clone()))?);
                angelic.push(w(Flavor::Angelic, &set((*q).clone()))?);
                let not_q = set(q.complement(n));
                let dual = match w(Flavor::Angelic, &not_q)? {
                    Predicate::Set(a) => set(a.complement(n)),
                    other => other,
                };
                let d = demonic.last().expect("just pushed");
                duality.record(*d == dual, || first_difference(&space, d, &dual).unwrap_or_default());
            }
            for (i, j) in pairs(sets.len()) {
                let both = w(Flavor::Demonic, &set(sets[i].intersection(sets[j])))?;
                let expected = set(as_set(&demonic[i]).intersection(as_set(&demonic[j])));
                meet.record(both == expected, || {
                    format!("probes {i},{j}: {}", first_difference(&space, &both, &expected).unwrap_or_default())
                });
                let either = w(Flavor::Angelic, &set(sets[i].union(sets[j])))?;
                let expected = set(as_set(&angelic[i]).union(as_set(&angelic[j])));
                join.record(either == expected, || {
                    format!("probes {i},{j}: {}", first_difference(&space, &either, &expected).unwrap_or_default())
                });
                for (flavor, whole) in [(Flavor::Demonic, &demonic[i]), (Flavor::Angelic, &angelic[i])] {
                    let smaller = w(flavor, &set(sets[i].intersection(sets[j])))?;
                    monotone.record(as_set(&smaller).is_subset(as_set(whole)), || {
                        format!("{flavor} wp of probes {i}∩{j} exceeds wp of probe {i}")
                    });
                }
            }
            out.extend([top, bottom, meet, join, duality, monotone].map(Tally::done));
        }
        Mode::Dist => {
            let (mut additive, mut homogeneous, mut normalized, mut monotone) = (
                Tally::new("additive"),
                Tally::new("homogeneous"),
                Tally::new("normalized"),
                Tally::new("monotone"),
            );
            let half = rat(1, 2);
            let third = rat(1, 3);
            let fuzzy = |f: FuzzyPredicate| Predicate::Fuzzy(f);
            let one = fuzzy(FuzzyPredicate::constant(space.set(), Rat::one())?);
            let w1 = w(Flavor::Expectation, &one)?;
            normalized.record(w1 == one, || first_difference(&space, &w1, &one).unwrap_or_default());
            let wps = fuzzies
                .iter()
                .map(|q| w(Flavor::Expectation, &fuzzy((*q).clone())))
                .collect::<Result<Vec<_>>>()?;
            for (i, q) in fuzzies.iter().enumerate() {
                let scaled = w(Flavor::Expectation, &fuzzy(q.scalar(&third)?))?;
                let expected = fuzzy(as_fuzzy(&wps[i]).scalar(&third)?);
                homogeneous.record(scaled == expected, || {
                    format!("probe {i}: {}", first_difference(&space, &scaled, &expected).unwrap_or_default())
                });
            }
            for (i, j) in pairs(fuzzies.len()) {
                let (a, b) = (fuzzies[i].scalar(&half)?, fuzzies[j].scalar(&half)?);
                let sum = a.ovee(&b)?.expect("halves are orthogonal");
                let lhs = w(Flavor::Expectation, &fuzzy(sum))?;
                let (wa, wb) = (w(Flavor::Expectation, &fuzzy(a))?, w(Flavor::Expectation, &fuzzy(b))?);
                match as_fuzzy(&wa).ovee(as_fuzzy(&wb))? {
                    Some(f) => {
                        let rhs = fuzzy(f);
                        additive.record(lhs == rhs, || {
                            format!("probes {i},{j}: {}", first_difference(&space, &lhs, &rhs).unwrap_or_default())
                        });
                    }
                    None => additive.record(false, || format!("probes {i},{j}: wp images are not orthogonal")),
                }
                let lower = FuzzyPredicate::from_fn(space.set(), |s| {
                    fuzzies[i].value(s).clone().min(fuzzies[j].value(s).clone())
                })?;
                let wl = w(Flavor::Expectation, &fuzzy(lower))?;
                monotone.record(as_fuzzy(&wl).leq(as_fuzzy(&wps[i])), || {
                    format!("wp of min(probe {i}, probe {j}) exceeds wp of probe {i}")
                });
            }
            out.extend([normalized, additive, homogeneous, monotone].map(Tally::done));
        }
    }
    Ok(out)
}

fn as_set(p: &Predicate) -> &ElemSet {
    match p {
        Predicate::Set(s) => s,
        Predicate::Fuzzy(_) => unreachable!("pow-mode wp yields sets"),
    }
}

fn as_fuzzy(p: &Predicate) -> &FuzzyPredicate {
    match p {
        Predicate::Fuzzy(f) => f,
        Predicate::Set(_) => unreachable!("dist-mode wp yields fuzzy predicates"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wp::parse;

    #[test]
    fn skip_with_atomic_posts() {
        let p = parse("vars x in 0..2, y in 0..1; body: skip").unwrap();
        let space = StateSpace::of(&p).unwrap();
        for flavor in Flavor::ALL {
            let probes = default_probes(&space, flavor.mode(), 1);
            assert_eq!(probes.len(), space.len() + RANDOM_PROBES + if flavor.mode() == Mode::Pow { 2 } else { 3 });
            let r = check_roundtrip(&p, flavor, &probes).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
        }
    }

    #[test]
    fn mixed_program() {
        let p = parse(
            "vars x in 0..3, y in 0..2;
             body: if x < y { choose { x := x + y } [] { abort } } else { prob 1/3 { y := y * 2 } { skip } }; x := x % 3",
        )
        .unwrap();
        let space = StateSpace::of(&p).unwrap();
        let probes = default_probes(&space, Mode::Pow, 7);
        for flavor in [Flavor::Demonic, Flavor::Angelic] {
            assert!(check_roundtrip(&p, flavor, &probes).unwrap().passed());
        }
        assert!(check_healthiness(&p, Mode::Pow, &probes).unwrap().iter().all(InvariantCheck::passed));
    }

    #[test]
    fn dist_healthiness() {
        let p = parse("vars x in 0..3; body: prob 1/4 { x := x + 1 } { if x == 2 { x := 0 } }; x := x * x").unwrap();
        let space = StateSpace::of(&p).unwrap();
        let probes = default_probes(&space, Mode::Dist, 3);
        assert!(check_roundtrip(&p, Flavor::Expectation, &probes).unwrap().passed());
        let checks = check_healthiness(&p, Mode::Dist, &probes).unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(InvariantCheck::passed), "{checks:?}");
    }

    #[test]
    fn probes_must_match_mode() {
        let p = parse("vars x in 0..1; body: skip").unwrap();
        let space = StateSpace::of(&p).unwrap();
        let probes = default_probes(&space, Mode::Dist, 0);
        assert!(matches!(check_healthiness(&p, Mode::Pow, &probes), Err(Error::ModeMismatch(_))));
        assert!(matches!(check_roundtrip(&p, Flavor::Demonic, &probes), Err(Error::ModeMismatch(_))));
    }

    #[test]
    fn large_spaces_sample_atoms() {
        let p = parse("vars x in 0..31, y in 0..15; body: x := x + y").unwrap();
        let space = StateSpace::of(&p).unwrap();
        let probes = default_probes(&space, Mode::Pow, 11);
        assert_eq!(probes.len(), 2 + ATOMIC_PROBES + RANDOM_PROBES);
        assert!(check_roundtrip(&p, Flavor::Demonic, &probes).unwrap().passed());
    }
}

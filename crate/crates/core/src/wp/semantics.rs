use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value as Json};

use crate::bitset::ElemSet;
use crate::effect::rat::{fraction_string, one_minus};
use crate::effect::{Distribution, FuzzyPredicate, Rat};
use crate::error::{Error, Result};
use crate::kit::{kleisli_compose, KleisliArrow};
use crate::monads::{DistributionMonad, Monad, PowersetMonad};
use crate::order::FinPoset;

use super::state::{eval, StateSpace, Value, STATE_CAP};
use super::syntax::{Expr, Program, Stmt, Ty};

/// Which monad interprets nondeterminism: `P` or `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Pow,
    Dist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Box transpose: every outcome satisfies the post.
    Demonic,
    /// Diamond transpose: some outcome satisfies the post.
    Angelic,
    /// Expected value of a fuzzy post.
    Expectation,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Demonic, Flavor::Angelic, Flavor::Expectation];

    pub fn mode(self) -> Mode {
        match self {
            Flavor::Demonic | Flavor::Angelic => Mode::Pow,
            Flavor::Expectation => Mode::Dist,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Demonic => "demonic",
            Flavor::Angelic => "angelic",
            Flavor::Expectation => "expectation",
        }
    }
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Pow => "pow",
            Mode::Dist => "dist",
        }
    }

    pub fn default_flavor(self) -> Flavor {
        match self {
            Mode::Pow => Flavor::Demonic,
            Mode::Dist => Flavor::Expectation,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pow" | "powerset" => Ok(Mode::Pow),
            "dist" | "distribution" => Ok(Mode::Dist),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn mode_error(what: &str, mode: Mode) -> Error {
    Error::ModeMismatch(format!("{what} is not allowed in {mode} mode"))
}

/// A program's meaning as a Kleisli arrow on its state space.
#[derive(Clone, Debug)]
pub enum Denotation {
    Pow(KleisliArrow<ElemSet>),
    Dist(KleisliArrow<Distribution>),
}

pub(crate) fn powerset_monad() -> PowersetMonad {
    PowersetMonad { cap: STATE_CAP }
}

pub(crate) fn distribution_monad() -> DistributionMonad {
    DistributionMonad {
        cap: STATE_CAP,
        probe_den: 1,
    }
}

pub fn denote(p: &Program, mode: Mode) -> Result<Denotation> {
    match mode {
        Mode::Pow => denote_pow(p).map(Denotation::Pow),
        Mode::Dist => denote_dist(p).map(Denotation::Dist),
    }
}

pub fn denote_pow(p: &Program) -> Result<KleisliArrow<ElemSet>> {
    let space = StateSpace::of(p)?;
    Denoter::new(&space, powerset_monad()).run(&p.body)
}

pub fn denote_dist(p: &Program) -> Result<KleisliArrow<Distribution>> {
    let space = StateSpace::of(p)?;
    Denoter::new(&space, distribution_monad()).run(&p.body)
}

/// Operations beyond the monad structure that the language needs.
trait Effects: Monad {
    const MODE: Mode;
    fn abort(&self, n: usize) -> Result<Self::Elem>;
    fn choose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn prob(&self, r: &Rat, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

impl Effects for PowersetMonad {
    const MODE: Mode = Mode::Pow;

    fn abort(&self, _n: usize) -> Result<ElemSet> {
        Ok(ElemSet::new())
    }

    fn choose(&self, a: &ElemSet, b: &ElemSet) -> Result<ElemSet> {
        Ok(a.union(b))
    }

    /// Support of the convex combination.
    fn prob(&self, r: &Rat, a: &ElemSet, b: &ElemSet) -> Result<ElemSet> {
        Ok(if r.is_zero() {
            b.clone()
        } else if r.is_one() {
            a.clone()
        } else {
            a.union(b)
        })
    }
}

impl Effects for DistributionMonad {
    const MODE: Mode = Mode::Dist;

    fn abort(&self, _n: usize) -> Result<Distribution> {
        Err(mode_error("abort", Mode::Dist))
    }

    fn choose(&self, _a: &Distribution, _b: &Distribution) -> Result<Distribution> {
        Err(mode_error("choose", Mode::Dist))
    }

    fn prob(&self, r: &Rat, a: &Distribution, b: &Distribution) -> Result<Distribution> {
        Distribution::convex(r, a, b)
    }
}

struct Denoter<'a, M> {
    space: &'a StateSpace,
    poset: FinPoset,
    m: M,
}

impl<'a, M: Effects> Denoter<'a, M> {
    fn new(space: &'a StateSpace, m: M) -> Self {
        Denoter {
            space,
            poset: space.poset(),
            m,
        }
    }

    fn arrow(&self, images: Vec<M::Elem>) -> KleisliArrow<M::Elem> {
        KleisliArrow::from_parts(self.m.name(), self.poset.clone(), self.poset.clone(), images)
    }

    fn pointwise(
        &self,
        f: impl Fn(usize) -> Result<M::Elem>,
    ) -> Result<KleisliArrow<M::Elem>> {
        Ok(self.arrow((0..self.space.len()).map(f).collect::<Result<_>>()?))
    }

    fn run(&self, s: &Stmt) -> Result<KleisliArrow<M::Elem>> {
        let n = self.space.len();
        match s {
            Stmt::Skip => Ok(KleisliArrow::unit(&self.m, &self.poset)),
            Stmt::Abort => self.pointwise(|_| self.m.abort(n)),
            Stmt::Assign(v, e) => self.pointwise(|st| {
                let value = eval(e, &self.space.env(st))?.num();
                Ok(self.m.unit(&self.poset, self.space.assign(st, *v, &value)?))
            }),
            Stmt::Seq(a, b) => kleisli_compose(&self.m, &self.run(b)?, &self.run(a)?),
            Stmt::If(c, a, b) => {
                let (fa, fb) = (self.run(a)?, self.run(b)?);
                self.pointwise(|st| {
                    let branch = if eval(c, &self.space.env(st))?.truth() { &fa } else { &fb };
                    Ok(branch.apply(st).clone())
                })
            }
            Stmt::Choose(a, b) => {
                if M::MODE == Mode::Dist {
                    return Err(mode_error("choose", M::MODE));
                }
                let (fa, fb) = (self.run(a)?, self.run(b)?);
                self.pointwise(|st| self.m.choose(fa.apply(st), fb.apply(st)))
            }
            Stmt::Prob(r, a, b) => {
                let (fa, fb) = (self.run(a)?, self.run(b)?);
                self.pointwise(|st| self.m.prob(r, fa.apply(st), fb.apply(st)))
            }
        }
    }
}

/// A predicate on the state space: a subset in `pow` mode, a fuzzy
/// predicate in `dist` mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Set(ElemSet),
    Fuzzy(FuzzyPredicate),
}

impl Predicate {
    pub fn mode(&self) -> Mode {
        match self {
            Predicate::Set(_) => Mode::Pow,
            Predicate::Fuzzy(_) => Mode::Dist,
        }
    }

    pub fn value(&self, s: usize) -> Rat {
        match self {
            Predicate::Set(u) => {
                if u.contains(s) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            }
            Predicate::Fuzzy(f) => f.value(s).clone(),
        }
    }

    pub fn render_value(&self, s: usize) -> String {
        fraction_string(&self.value(s))
    }
}

/// Evaluates a post expression into a predicate for `mode`. Boolean posts
/// become indicators in `dist` mode.
pub fn post_predicate(space: &StateSpace, post: &Expr, mode: Mode) -> Result<Predicate> {
    match mode {
        Mode::Pow => {
            if post.ty() != Ty::Bool {
                return Err(Error::ModeMismatch("pow mode needs a boolean post".into()));
            }
            let mut u = ElemSet::new();
            for s in 0..space.len() {
                if eval(post, &space.env(s))?.truth() {
                    u.insert(s);
                }
            }
            Ok(Predicate::Set(u))
        }
        Mode::Dist => {
            let values = (0..space.len())
                .map(|s| eval(post, &space.env(s)).map(|v| v.num()))
                .collect::<Result<Vec<_>>>()?;
            FuzzyPredicate::new(space.set().clone(), values).map(Predicate::Fuzzy)
        }
    }
}

/// A statement with its guards and assignments tabulated over a state space,
/// so repeated wp queries only do table lookups.
pub(crate) enum Compiled {
    Skip,
    Abort,
    Jump(Vec<usize>),
    Seq(Box<Compiled>, Box<Compiled>),
    If(Vec<bool>, Box<Compiled>, Box<Compiled>),
    Choose(Box<Compiled>, Box<Compiled>),
    Prob(Rat, Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub(crate) fn new(space: &StateSpace, s: &Stmt) -> Result<Compiled> {
        let pair = |a: &Stmt, b: &Stmt| -> Result<(Box<Compiled>, Box<Compiled>)> {
            Ok((Box::new(Compiled::new(space, a)?), Box::new(Compiled::new(space, b)?)))
        };
        Ok(match s {
            Stmt::Skip => Compiled::Skip,
            Stmt::Abort => Compiled::Abort,
            Stmt::Assign(v, e) => Compiled::Jump(
                (0..space.len())
                    .map(|st| space.assign(st, *v, &eval(e, &space.env(st))?.num()))
                    .collect::<Result<_>>()?,
            ),
            Stmt::Seq(a, b) => {
                let (a, b) = pair(a, b)?;
                Compiled::Seq(a, b)
            }
            Stmt::If(c, a, b) => {
                let guard = (0..space.len())
                    .map(|st| eval(c, &space.env(st)).map(Value::truth))
                    .collect::<Result<_>>()?;
                let (a, b) = pair(a, b)?;
                Compiled::If(guard, a, b)
            }
            Stmt::Choose(a, b) => {
                let (a, b) = pair(a, b)?;
                Compiled::Choose(a, b)
            }
            Stmt::Prob(r, a, b) => {
                let (a, b) = pair(a, b)?;
                Compiled::Prob(r.clone(), a, b)
            }
        })
    }

    pub(crate) fn wp_set(&self, n: usize, flavor: Flavor, q: &ElemSet) -> Result<ElemSet> {
        Ok(match self {
            Compiled::Skip => q.clone(),
            Compiled::Abort => match flavor {
                Flavor::Demonic => ElemSet::full(n),
                Flavor::Angelic => ElemSet::new(),
                Flavor::Expectation => return Err(mode_error("abort", Mode::Dist)),
            },
            Compiled::Jump(next) => (0..n).filter(|&st| q.contains(next[st])).collect(),
            Compiled::Seq(a, b) => a.wp_set(n, flavor, &b.wp_set(n, flavor, q)?)?,
            Compiled::If(guard, a, b) => {
                let (wa, wb) = (a.wp_set(n, flavor, q)?, b.wp_set(n, flavor, q)?);
                (0..n)
                    .filter(|&st| if guard[st] { wa.contains(st) } else { wb.contains(st) })
                    .collect()
            }
            Compiled::Choose(a, b) => combine(flavor, a.wp_set(n, flavor, q)?, b.wp_set(n, flavor, q)?),
            Compiled::Prob(r, _, b) if r.is_zero() => b.wp_set(n, flavor, q)?,
            Compiled::Prob(r, a, _) if r.is_one() => a.wp_set(n, flavor, q)?,
            Compiled::Prob(_, a, b) => combine(flavor, a.wp_set(n, flavor, q)?, b.wp_set(n, flavor, q)?),
        })
    }

    pub(crate) fn wp_expectation(&self, q: &[Rat]) -> Result<Vec<Rat>> {
        match self {
            Compiled::Skip => Ok(q.to_vec()),
            Compiled::Abort => Err(mode_error("abort", Mode::Dist)),
            Compiled::Choose(..) => Err(mode_error("choose", Mode::Dist)),
            Compiled::Jump(next) => Ok(next.iter().map(|&t| q[t].clone()).collect()),
            Compiled::Seq(a, b) => a.wp_expectation(&b.wp_expectation(q)?),
            Compiled::If(guard, a, b) => {
                let (wa, wb) = (a.wp_expectation(q)?, b.wp_expectation(q)?);
                Ok(guard
                    .iter()
                    .zip(wa.into_iter().zip(wb))
                    .map(|(&g, (x, y))| if g { x } else { y })
                    .collect())
            }
            Compiled::Prob(r, a, b) => {
                let (wa, wb) = (a.wp_expectation(q)?, b.wp_expectation(q)?);
                let s = one_minus(r);
                Ok(wa
                    .into_iter()
                    .zip(wb)
                    .map(|(x, y)| if x == y { x } else { r * x + &s * y })
                    .collect())
            }
        }
    }

    pub(crate) fn wp(&self, space: &StateSpace, flavor: Flavor, post: &Predicate) -> Result<Predicate> {
        match (flavor, post) {
            (Flavor::Demonic | Flavor::Angelic, Predicate::Set(q)) => {
                self.wp_set(space.len(), flavor, q).map(Predicate::Set)
            }
            (Flavor::Expectation, Predicate::Fuzzy(q)) => {
                let values = self.wp_expectation(q.values())?;
                FuzzyPredicate::new(space.set().clone(), values).map(Predicate::Fuzzy)
            }
            _ => Err(Error::ModeMismatch(format!(
                "{flavor} wp needs a {} post",
                flavor.mode()
            ))),
        }
    }
}

/// Demonic or angelic wp by structural recursion.
pub fn wp_set(space: &StateSpace, s: &Stmt, flavor: Flavor, q: &ElemSet) -> Result<ElemSet> {
    Compiled::new(space, s)?.wp_set(space.len(), flavor, q)
}

fn combine(flavor: Flavor, a: ElemSet, b: ElemSet) -> ElemSet {
    match flavor {
        Flavor::Angelic => a.union(&b),
        _ => a.intersection(&b),
    }
}

/// Expectation wp by structural recursion.
pub fn wp_expectation(space: &StateSpace, s: &Stmt, q: &[Rat]) -> Result<Vec<Rat>> {
    Compiled::new(space, s)?.wp_expectation(q)
}

/// `wp(p, post)` in the given flavor.
pub fn wp(p: &Program, flavor: Flavor, post: &Predicate) -> Result<Predicate> {
    let space = StateSpace::of(p)?;
    wp_in(&space, &p.body, flavor, post)
}

pub(crate) fn wp_in(space: &StateSpace, body: &Stmt, flavor: Flavor, post: &Predicate) -> Result<Predicate> {
    Compiled::new(space, body)?.wp(space, flavor, post)
}

/// A precondition tabulated over the state space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpTable {
    pub flavor: Flavor,
    pub states: Vec<String>,
    pub pre: Predicate,
}

impl WpTable {
    pub fn to_json(&self) -> Json {
        let wp: Map<String, Json> = self
            .states
            .iter()
            .enumerate()
            .map(|(s, label)| (label.clone(), json!(self.pre.render_value(s))))
            .collect();
        json!({ "states": self.states, "wp": wp })
    }

    pub fn to_table(&self) -> String {
        let width = self.states.iter().map(|s| s.len()).max().unwrap_or(0).max(5);
        let mut out = format!("{:<width$}  wp ({})\n", "state", self.flavor);
        for (s, label) in self.states.iter().enumerate() {
            out.push_str(&format!("{label:<width$}  {}\n", self.pre.render_value(s)));
        }
        out
    }
}

/// The program's own post (or `post` when given) pushed back through the
/// body.
pub fn wp_table(p: &Program, flavor: Flavor, post: Option<&Expr>) -> Result<WpTable> {
    let space = StateSpace::of(p)?;
    let post = post
        .or(p.post.as_ref())
        .ok_or_else(|| Error::InvalidElement("program has no postcondition".into()))?;
    let q = post_predicate(&space, post, flavor.mode())?;
    Ok(WpTable {
        flavor,
        states: space.labels().to_vec(),
        pre: wp_in(&space, &p.body, flavor, &q)?,
    })
}

//! Finite algebras over posets and exhaustive enumeration of the maps
//! between them that preserve a selected structure.
//!
//! Every full-and-faithfulness certificate in the crate rests on
//! [`enumerate_structure_maps`]: it lists all maps `dom -> cod` of a given
//! kind by backtracking over a linear extension of `dom`, checking each
//! preservation constraint as soon as all of its arguments are assigned.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::poset::FinPoset;

/// Default search budget: number of candidate assignments tried.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Binary operation table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    pub fn from_fn<F: Fn(usize, usize) -> usize>(n: usize, f: F) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b));
            }
        }
        Table { n, cells }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }
}

/// Plotkin-algebra operations: the binary `⨿` and the absorbing `⋈`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotkinOps {
    pub coproduct: Table,
    pub bowtie: usize,
}

/// A finite poset with whatever of (binary joins, binary meets, bottom,
/// top, complement, Plotkin operations) it happens to carry.
#[derive(Clone, Debug)]
pub struct Algebra {
    poset: FinPoset,
    join: Option<Table>,
    meet: Option<Table>,
    bottom: Option<usize>,
    top: Option<usize>,
    complement: Option<Vec<usize>>,
    plotkin: Option<PlotkinOps>,
}

impl Algebra {
    /// Records every lattice operation the poset has.
    pub fn new(poset: FinPoset) -> Self {
        let n = poset.len();
        let total = |f: &dyn Fn(usize, usize) -> Option<usize>| -> Option<Table> {
            let mut cells = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    cells.push(f(a, b)?);
                }
            }
            Some(Table { n, cells })
        };
        let join = total(&|a, b| poset.join(a, b));
        let meet = total(&|a, b| poset.meet(a, b));
        let bottom = poset.bottom();
        let top = poset.top();
        let complement = match (&join, &meet, bottom, top) {
            (Some(j), Some(m), Some(b), Some(t)) => (0..n)
                .map(|a| (0..n).find(|&c| j.get(a, c) == t && m.get(a, c) == b))
                .collect(),
            _ => None,
        };
        Algebra {
            poset,
            join,
            meet,
            bottom,
            top,
            complement,
            plotkin: None,
        }
    }

    /// As [`Algebra::new`] but insists on a (complete) lattice.
    pub fn lattice(poset: FinPoset) -> Result<Self> {
        if !poset.is_lattice() {
            return Err(Error::NotALattice(format!("{} elements", poset.len())));
        }
        Ok(Self::new(poset))
    }

    /// Attaches Plotkin operations, checking the axioms: `⨿` idempotent,
    /// commutative, associative, monotone, with `⋈` absorbing, and the
    /// poset bounded.
    pub fn with_plotkin(mut self, coproduct: Table, bowtie: usize) -> Result<Self> {
        let n = self.poset.len();
        if self.bottom.is_none() || self.top.is_none() {
            return Err(Error::SideConditionViolated(
                "Plotkin algebra needs 0 and 1".into(),
            ));
        }
        for a in 0..n {
            if coproduct.get(a, a) != a {
                return Err(Error::SideConditionViolated("⨿ not idempotent".into()));
            }
            if coproduct.get(a, bowtie) != bowtie {
                return Err(Error::SideConditionViolated("⋈ not absorbing".into()));
            }
            for b in 0..n {
                if coproduct.get(a, b) != coproduct.get(b, a) {
                    return Err(Error::SideConditionViolated("⨿ not commutative".into()));
                }
                for c in 0..n {
                    if coproduct.get(coproduct.get(a, b), c) != coproduct.get(a, coproduct.get(b, c)) {
                        return Err(Error::SideConditionViolated("⨿ not associative".into()));
                    }
                }
                if self.poset.leq(a, b) {
                    for c in 0..n {
                        if !self.poset.leq(coproduct.get(a, c), coproduct.get(b, c)) {
                            return Err(Error::SideConditionViolated("⨿ not monotone".into()));
                        }
                    }
                }
            }
        }
        self.plotkin = Some(PlotkinOps { coproduct, bowtie });
        Ok(self)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join.as_ref().map(|t| t.get(a, b))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet.as_ref().map(|t| t.get(a, b))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn complement(&self, a: usize) -> Option<usize> {
        self.complement.as_ref().map(|c| c[a])
    }

    pub fn plotkin(&self) -> Option<&PlotkinOps> {
        self.plotkin.as_ref()
    }

    fn table(&self, op: Op) -> Option<&Table> {
        match op {
            Op::Join => self.join.as_ref(),
            Op::Meet => self.meet.as_ref(),
            Op::Coproduct => self.plotkin.as_ref().map(|p| &p.coproduct),
        }
    }

    fn constant(&self, c: Const) -> Option<usize> {
        match c {
            Const::Bottom => self.bottom,
            Const::Top => self.top,
            Const::Bowtie => self.plotkin.as_ref().map(|p| p.bowtie),
        }
    }
}

/// Which maps count as structure-preserving.
///
/// On finite lattices "all joins" is binary joins plus the bottom, "all
/// meets" is binary meets plus the top, and directed joins are preserved by
/// every monotone map, so the selectors reduce to finitary conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    /// Every function (no order condition).
    Any,
    Monotone,
    /// All joins (`∨`, `⊥`).
    JoinPreserving,
    /// All meets (`∧`, `⊤`).
    MeetPreserving,
    /// All joins and the top.
    JoinTop,
    /// Finite meets (`∧`, `⊤`); meet-semilattice homomorphisms.
    MeetTop,
    /// All joins and finite meets.
    Frame,
    /// Finite meets, directed joins and the bottom.
    PreframeZero,
    /// `⨿`, `⋈`, `0`, `1` and order.
    PlotkinHom,
    /// Boolean algebra homomorphisms.
    Boolean,
    /// Complete Boolean algebra homomorphisms: complement and all joins.
    CompleteBoolean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Join,
    Meet,
    Coproduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Const {
    Bottom,
    Top,
    Bowtie,
}

impl Structure {
    pub const ALL: [Structure; 11] = [
        Structure::Any,
        Structure::Monotone,
        Structure::JoinPreserving,
        Structure::MeetPreserving,
        Structure::JoinTop,
        Structure::MeetTop,
        Structure::Frame,
        Structure::PreframeZero,
        Structure::PlotkinHom,
        Structure::Boolean,
        Structure::CompleteBoolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Structure::Any => "any",
            Structure::Monotone => "monotone",
            Structure::JoinPreserving => "join-preserving",
            Structure::MeetPreserving => "meet-preserving",
            Structure::JoinTop => "join+top",
            Structure::MeetTop => "meet+top",
            Structure::Frame => "frame",
            Structure::PreframeZero => "preframe+0",
            Structure::PlotkinHom => "plotkin-hom",
            Structure::Boolean => "boolean",
            Structure::CompleteBoolean => "complete-boolean",
        }
    }

    fn monotone(self) -> bool {
        self != Structure::Any
    }

    fn ops(self) -> &'static [Op] {
        match self {
            Structure::Any | Structure::Monotone => &[],
            Structure::JoinPreserving | Structure::JoinTop => &[Op::Join],
            Structure::MeetPreserving | Structure::MeetTop | Structure::PreframeZero => &[Op::Meet],
            Structure::Frame | Structure::Boolean => &[Op::Join, Op::Meet],
            Structure::CompleteBoolean => &[Op::Join],
            Structure::PlotkinHom => &[Op::Coproduct],
        }
    }

    fn constants(self) -> &'static [Const] {
        match self {
            Structure::Any | Structure::Monotone => &[],
            Structure::JoinPreserving => &[Const::Bottom],
            Structure::MeetPreserving | Structure::MeetTop => &[Const::Top],
            Structure::JoinTop
            | Structure::Frame
            | Structure::PreframeZero
            | Structure::Boolean
            | Structure::CompleteBoolean => &[Const::Bottom, Const::Top],
            Structure::PlotkinHom => &[Const::Bottom, Const::Top, Const::Bowtie],
        }
    }

    fn complement(self) -> bool {
        matches!(self, Structure::Boolean | Structure::CompleteBoolean)
    }

    /// Checks that `graph` preserves this structure from `dom` to `cod`.
    /// On failure returns a description of the first violated constraint.
    pub fn check(self, dom: &Algebra, cod: &Algebra, graph: &[usize]) -> Result<(), String> {
        self.require(dom, cod).map_err(|e| e.to_string())?;
        let n = dom.len();
        if graph.len() != n || graph.iter().any(|&v| v >= cod.len()) {
            return Err("graph is not a total function into the codomain".into());
        }
        if self.monotone() && !dom.poset().is_monotone_into(cod.poset(), graph) {
            return Err("not monotone".into());
        }
        for &c in self.constants() {
            let (d, k) = (dom.constant(c).unwrap(), cod.constant(c).unwrap());
            if graph[d] != k {
                return Err(format!("{:?} not preserved", c));
            }
        }
        for &op in self.ops() {
            let (td, tc) = (dom.table(op).unwrap(), cod.table(op).unwrap());
            for a in 0..n {
                for b in 0..n {
                    if graph[td.get(a, b)] != tc.get(graph[a], graph[b]) {
                        return Err(format!(
                            "{:?} not preserved at ({}, {})",
                            op,
                            dom.poset().label(a),
                            dom.poset().label(b)
                        ));
                    }
                }
            }
        }
        if self.complement() {
            for a in 0..n {
                if graph[dom.complement(a).unwrap()] != cod.complement(graph[a]).unwrap() {
                    return Err(format!("complement not preserved at {}", dom.poset().label(a)));
                }
            }
        }
        Ok(())
    }

    fn require(self, dom: &Algebra, cod: &Algebra) -> Result<()> {
        for alg in [dom, cod] {
            for &op in self.ops() {
                if alg.table(op).is_none() {
                    return Err(Error::NotALattice(format!(
                        "{} maps need {:?} on both sides",
                        self.name(),
                        op
                    )));
                }
            }
            for &c in self.constants() {
                if alg.constant(c).is_none() {
                    return Err(Error::NotALattice(format!(
                        "{} maps need {:?} on both sides",
                        self.name(),
                        c
                    )));
                }
            }
            if self.complement() && alg.complement.is_none() {
                return Err(Error::NotALattice(format!(
                    "{} maps need complemented lattices",
                    self.name()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Structure::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Lists every map `dom -> cod` preserving `structure`, as graphs indexed by
/// `dom` elements, in lexicographic order of graphs (read along `dom`'s
/// linear extension). Exceeding `budget` candidate assignments is an error.
pub fn enumerate_structure_maps(
    dom: &Algebra,
    cod: &Algebra,
    structure: Structure,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    structure.require(dom, cod)?;
    let n = dom.len();
    let order = dom.poset().linear_extension();
    let mut position = vec![0; n];
    for (p, &e) in order.iter().enumerate() {
        position[e] = p;
    }

    // For each element e: pairs (a, b, op) with op(a, b) = e or with e
    // among {a, b}, checkable once the latest of a, b, op(a,b) is assigned.
    let mut checks: Vec<Vec<(usize, usize, Op)>> = vec![Vec::new(); n];
    for &op in structure.ops() {
        let t = dom.table(op).unwrap();
        for a in 0..n {
            for b in a..n {
                let r = t.get(a, b);
                let last = [a, b, r].into_iter().max_by_key(|&x| position[x]).unwrap();
                checks[last].push((a, b, op));
            }
        }
    }
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    for &c in structure.constants() {
        let (d, k) = (dom.constant(c).unwrap(), cod.constant(c).unwrap());
        match fixed[d] {
            Some(prev) if prev != k => return Ok(Vec::new()),
            _ => fixed[d] = Some(k),
        }
    }

    let mut search = Search {
        dom,
        cod,
        structure,
        order: &order,
        checks: &checks,
        fixed: &fixed,
        graph: vec![usize::MAX; n],
        out: Vec::new(),
        tried: 0,
        budget,
    };
    search.go(0)?;
    Ok(search.out)
}

struct Search<'a> {
    dom: &'a Algebra,
    cod: &'a Algebra,
    structure: Structure,
    order: &'a [usize],
    checks: &'a [Vec<(usize, usize, Op)>],
    fixed: &'a [Option<usize>],
    graph: Vec<usize>,
    out: Vec<Vec<usize>>,
    tried: u64,
    budget: u64,
}

impl Search<'_> {
    fn go(&mut self, pos: usize) -> Result<()> {
        if pos == self.order.len() {
            self.out.push(self.graph.clone());
            return Ok(());
        }
        let e = self.order[pos];
        let candidates: Vec<usize> = match self.fixed[e] {
            Some(k) => vec![k],
            None => (0..self.cod.len()).collect(),
        };
        for c in candidates {
            self.tried += 1;
            if self.tried > self.budget {
                return Err(Error::too_large(
                    format!("{} map search", self.structure),
                    self.tried as u128,
                    self.budget as u128,
                ));
            }
            self.graph[e] = c;
            if self.consistent(pos, e) {
                self.go(pos + 1)?;
            }
        }
        self.graph[e] = usize::MAX;
        Ok(())
    }

    fn consistent(&self, pos: usize, e: usize) -> bool {
        let (dp, cp) = (self.dom.poset(), self.cod.poset());
        let c = self.graph[e];
        if self.structure.monotone() {
            for &a in &self.order[..pos] {
                let fa = self.graph[a];
                if dp.leq(a, e) && !cp.leq(fa, c) {
                    return false;
                }
                if dp.leq(e, a) && !cp.leq(c, fa) {
                    return false;
                }
            }
        }
        for &(a, b, op) in &self.checks[e] {
            let (td, tc) = (self.dom.table(op).unwrap(), self.cod.table(op).unwrap());
            if self.graph[td.get(a, b)] != tc.get(self.graph[a], self.graph[b]) {
                return false;
            }
        }
        if self.structure.complement() {
            let ne = self.dom.complement(e).unwrap();
            let fne = self.graph[ne];
            if fne != usize::MAX && self.cod.complement(c).unwrap() != fne {
                return false;
            }
        }
        true
    }
}

/// The two-element chain `0 < 1` as an algebra.
pub fn two() -> Algebra {
    Algebra::new(FinPoset::chain(2))
}

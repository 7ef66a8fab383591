use std::collections::HashMap;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

use super::finset::FinSet;

/// Default element cap for the order substrate (upset/downset lattices).
pub const DEFAULT_POSET_CAP: usize = 8;

/// A finite partial order on named elements `0..n`.
///
/// Every finite poset is directed complete (a directed subset contains its
/// own maximum), so this type also stands in for finite dcpos.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPoset {
    labels: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

/// Builds a poset from declared elements and covering (or any generating)
/// pairs `(lo, hi)`. The order is the reflexive-transitive closure.
pub fn make_poset<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<FinPoset> {
    let set = FinSet::new(elements.iter().map(|s| s.as_ref().to_string()))?;
    let mut pairs = Vec::with_capacity(covers.len());
    for (lo, hi) in covers {
        pairs.push((set.index_of(lo.as_ref())?, set.index_of(hi.as_ref())?));
    }
    FinPoset::from_relation(set.elements().to_vec(), &pairs)
}

impl FinPoset {
    /// Closure of a generating relation over labels kept in the given order.
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        FinSet::from_ordered(labels.clone())?;
        let n = labels.len();
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::UnknownElement(format!("index {}", lo.max(hi))));
            }
            up[lo].insert(hi);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// From a full order relation given as up-rows. The caller guarantees
    /// the rows describe a reflexive, transitive, antisymmetric relation.
    pub(crate) fn from_up_rows(labels: Vec<String>, up: Vec<ElemSet>) -> Self {
        let n = labels.len();
        let mut down = vec![ElemSet::new(); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        FinPoset { labels, up, down }
    }

    /// Order from a predicate; checked for the partial-order axioms.
    pub fn from_leq<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let up: Vec<ElemSet> = (0..n)
            .map(|i| (0..n).filter(|&j| leq(i, j)).collect())
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::SideConditionViolated(format!(
                    "relation not reflexive at `{}`",
                    labels[i]
                )));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::SideConditionViolated(format!(
                        "relation not transitive through `{}`",
                        labels[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// Discrete order on a set.
    pub fn discrete(set: &FinSet) -> Self {
        let up = (0..set.len()).map(ElemSet::singleton).collect();
        Self::from_up_rows(set.elements().to_vec(), up)
    }

    /// Discrete order on `{0, .., n-1}`.
    pub fn discrete_n(n: usize) -> Self {
        Self::discrete(&FinSet::numbered(n))
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let up = (0..n).map(|i| (i..n).collect()).collect();
        Self::from_up_rows(labels, up)
    }

    /// Powerset of an `n`-element set ordered by inclusion; element `m` is
    /// the subset with bitmask `m`.
    pub fn powerset(set: &FinSet) -> Self {
        let n = set.len();
        assert!(n < 16, "powerset poset too large");
        let size = 1usize << n;
        let labels = (0..size)
            .map(|m| subset_label(set.elements(), &ElemSet::from_mask(m as u64)))
            .collect();
        let up = (0..size)
            .map(|a| (0..size).filter(|&b| a & b == a).collect())
            .collect();
        Self::from_up_rows(labels, up)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn carrier(&self) -> FinSet {
        FinSet::from_ordered(self.labels.clone()).expect("labels are distinct")
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `↑a`.
    pub fn up_of(&self, a: usize) -> &ElemSet {
        &self.up[a]
    }

    /// `↓a`.
    pub fn down_of(&self, a: usize) -> &ElemSet {
        &self.down[a]
    }

    pub fn is_discrete(&self) -> bool {
        self.up.iter().all(|r| r.len() == 1)
    }

    /// Same carrier, reversed order.
    pub fn opposite(&self) -> Self {
        FinPoset {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn up_closure(&self, s: &ElemSet) -> ElemSet {
        s.iter()
            .fold(ElemSet::new(), |acc, x| acc.union(&self.up[x]))
    }

    pub fn down_closure(&self, s: &ElemSet) -> ElemSet {
        s.iter()
            .fold(ElemSet::new(), |acc, x| acc.union(&self.down[x]))
    }

    pub fn is_upset(&self, s: &ElemSet) -> bool {
        s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_downset(&self, s: &ElemSet) -> bool {
        s.iter().all(|x| self.down[x].is_subset(s))
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Least element of `s`, if `s` has one.
    pub fn least_of(&self, s: &ElemSet) -> Option<usize> {
        s.iter().find(|&c| s.is_subset(&self.up[c]))
    }

    /// Greatest element of `s`, if `s` has one.
    pub fn greatest_of(&self, s: &ElemSet) -> Option<usize> {
        s.iter().find(|&c| s.is_subset(&self.down[c]))
    }

    /// Least upper bound of a subset (`⋁∅` is the bottom, when present).
    pub fn join_of(&self, s: &ElemSet) -> Option<usize> {
        let uppers = s
            .iter()
            .fold(self.full_set(), |acc, x| acc.intersection(&self.up[x]));
        self.least_of(&uppers)
    }

    /// Greatest lower bound of a subset (`⋀∅` is the top, when present).
    pub fn meet_of(&self, s: &ElemSet) -> Option<usize> {
        let lowers = s
            .iter()
            .fold(self.full_set(), |acc, x| acc.intersection(&self.down[x]));
        self.greatest_of(&lowers)
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.least_of(&self.up[a].intersection(&self.up[b]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest_of(&self.down[a].intersection(&self.down[b]))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least_of(&self.full_set())
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest_of(&self.full_set())
    }

    /// A finite poset is a complete lattice iff it is nonempty and every
    /// subset has a join; binary joins plus a bottom suffice.
    pub fn is_lattice(&self) -> bool {
        if self.is_empty() || self.bottom().is_none() {
            return false;
        }
        (0..self.len()).all(|a| (a + 1..self.len()).all(|b| self.join(a, b).is_some()))
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].iter() {
                if a == b {
                    continue;
                }
                let between = self.up[a].intersection(&self.down[b]);
                if between.len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: each element appears after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }

    /// True when `graph` is a monotone map from `self` to `cod`.
    pub fn is_monotone_into(&self, cod: &FinPoset, graph: &[usize]) -> bool {
        (0..self.len()).all(|a| {
            self.up[a]
                .iter()
                .all(|b| cod.leq(graph[a], graph[b]))
        })
    }

    /// Every upset of the poset, as a lattice ordered by inclusion.
    pub fn upsets(&self) -> Result<SubsetLattice> {
        self.upsets_capped(DEFAULT_POSET_CAP)
    }

    pub fn upsets_capped(&self, cap: usize) -> Result<SubsetLattice> {
        if self.len() > cap {
            return Err(Error::too_large("upsets", self.len() as u128, cap as u128));
        }
        // Top-down decisions: an element may join the upset only when all
        // strictly larger elements already did.
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        let mut current = ElemSet::new();
        self.collect_closed(&order, 0, &mut current, &mut out, true);
        Ok(SubsetLattice::new(self.labels.clone(), out, Kind::Upset))
    }

    /// Every downset of the poset, as a lattice ordered by inclusion.
    pub fn downsets(&self) -> Result<SubsetLattice> {
        self.downsets_capped(DEFAULT_POSET_CAP)
    }

    pub fn downsets_capped(&self, cap: usize) -> Result<SubsetLattice> {
        if self.len() > cap {
            return Err(Error::too_large("downsets", self.len() as u128, cap as u128));
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut current = ElemSet::new();
        self.collect_closed(&order, 0, &mut current, &mut out, false);
        Ok(SubsetLattice::new(self.labels.clone(), out, Kind::Downset))
    }

    fn collect_closed(
        &self,
        order: &[usize],
        pos: usize,
        current: &mut ElemSet,
        out: &mut Vec<ElemSet>,
        upward: bool,
    ) {
        if pos == order.len() {
            out.push(current.clone());
            return;
        }
        let x = order[pos];
        self.collect_closed(order, pos + 1, current, out, upward);
        let needed = if upward { &self.up[x] } else { &self.down[x] };
        let mut strict = needed.clone();
        strict.remove(x);
        if strict.is_subset(current) {
            current.insert(x);
            self.collect_closed(order, pos + 1, current, out, upward);
            current.remove(x);
        }
    }
}

/// Renders a subset as `{a,b}` using the given element names; indices
/// without a name print as `#i`.
pub fn subset_label(names: &[String], s: &ElemSet) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|i| names.get(i).cloned().unwrap_or_else(|| format!("#{i}")))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Tag recording which closure condition a family of subsets satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Plain,
    Upset,
    Downset,
}

/// A subset of a poset's carrier together with its closure kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetOf {
    pub members: ElemSet,
    pub kind: Kind,
}

impl SubsetOf {
    pub fn plain(members: ElemSet) -> Self {
        SubsetOf {
            members,
            kind: Kind::Plain,
        }
    }

    /// Tags `members` as an upset after checking it is one.
    pub fn upset(p: &FinPoset, members: ElemSet) -> Result<Self> {
        if !p.is_upset(&members) {
            return Err(Error::SideConditionViolated("not an upset".into()));
        }
        Ok(SubsetOf {
            members,
            kind: Kind::Upset,
        })
    }

    pub fn downset(p: &FinPoset, members: ElemSet) -> Result<Self> {
        if !p.is_downset(&members) {
            return Err(Error::SideConditionViolated("not a downset".into()));
        }
        Ok(SubsetOf {
            members,
            kind: Kind::Downset,
        })
    }
}

/// Least downset containing `s`.
pub fn down_closure(p: &FinPoset, s: &SubsetOf) -> SubsetOf {
    SubsetOf {
        members: p.down_closure(&s.members),
        kind: Kind::Downset,
    }
}

/// Least upset containing `s`.
pub fn up_closure(p: &FinPoset, s: &SubsetOf) -> SubsetOf {
    SubsetOf {
        members: p.up_closure(&s.members),
        kind: Kind::Upset,
    }
}

/// A family of subsets of some ambient carrier, ordered by inclusion and
/// presented as a poset whose element `i` is `members[i]`.
#[derive(Clone, Debug)]
pub struct SubsetLattice {
    ambient: Vec<String>,
    members: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
    poset: FinPoset,
    kind: Kind,
}

impl SubsetLattice {
    /// Family ordered by inclusion. Members are sorted canonically.
    pub fn new(ambient: Vec<String>, mut members: Vec<ElemSet>, kind: Kind) -> Self {
        members.sort();
        members.dedup();
        let labels: Vec<String> = members.iter().map(|m| subset_label(&ambient, m)).collect();
        let up = members
            .iter()
            .map(|a| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| a.is_subset(b))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        let poset = FinPoset::from_up_rows(labels, up);
        let index = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        SubsetLattice {
            ambient,
            members,
            index,
            poset,
            kind,
        }
    }

    /// All subsets of a set.
    pub fn powerset(set: &FinSet) -> Self {
        Self::new(
            set.elements().to_vec(),
            crate::bitset::all_subsets(set.len()).collect(),
            Kind::Plain,
        )
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn ambient_len(&self) -> usize {
        self.ambient.len()
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &ElemSet {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: &ElemSet) -> Option<usize> {
        self.index.get(s).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinPoset {
        make_poset(&["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn singleton_poset() {
        let p = make_poset::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn two_chain_closure() {
        let p = chain2();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
    }

    #[test]
    fn cycle_rejected() {
        let err = make_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(matches!(err, Err(Error::Cycle(_, _))));
    }

    #[test]
    fn unknown_cover_rejected() {
        let err = make_poset(&["a"], &[("a", "z")]);
        assert_eq!(err, Err(Error::UnknownElement("z".into())));
    }

    #[test]
    fn upsets_of_chain_and_antichain() {
        let ups = chain2().upsets().unwrap();
        let members: Vec<Vec<usize>> = ups.members().iter().map(|m| m.iter().collect()).collect();
        assert_eq!(members, vec![vec![], vec![1], vec![0, 1]]);
        assert_eq!(ups.poset().covers().len(), 2);

        let anti = FinPoset::discrete_n(2).upsets().unwrap();
        assert_eq!(anti.len(), 4);
        assert!(anti.poset().is_lattice());
    }

    #[test]
    fn upsets_of_boolean_square() {
        let square = FinPoset::powerset(&FinSet::numbered(2));
        assert_eq!(square.upsets().unwrap().len(), 6);
    }

    #[test]
    fn downsets_examples() {
        let downs = chain2().downsets().unwrap();
        let members: Vec<Vec<usize>> = downs.members().iter().map(|m| m.iter().collect()).collect();
        assert_eq!(members, vec![vec![], vec![0], vec![0, 1]]);
        assert_eq!(FinPoset::discrete_n(3).downsets().unwrap().len(), 8);
    }

    #[test]
    fn down_closure_examples() {
        let p = chain2();
        let empty = SubsetOf::plain(ElemSet::new());
        assert!(down_closure(&p, &empty).members.is_empty());
        let top = SubsetOf::plain(ElemSet::singleton(1));
        assert_eq!(down_closure(&p, &top).members, p.full_set());
        let anti = FinPoset::discrete_n(2);
        assert_eq!(
            down_closure(&anti, &SubsetOf::plain(ElemSet::singleton(1))).members,
            ElemSet::singleton(1)
        );
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            FinPoset::discrete_n(9).upsets(),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn lattice_ops() {
        let p = FinPoset::powerset(&FinSet::numbered(2));
        assert!(p.is_lattice());
        assert_eq!(p.join(1, 2), Some(3));
        assert_eq!(p.meet(1, 2), Some(0));
        assert_eq!(p.join_of(&ElemSet::new()), Some(0));
        assert_eq!(p.meet_of(&ElemSet::new()), Some(3));
        assert!(!FinPoset::discrete_n(2).is_lattice());
    }
}

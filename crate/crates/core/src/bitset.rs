//! Compact sets of element indices.
//!
//! Every finite carrier in the crate is addressed by dense indices
//! `0..n`, so subsets, upsets, downsets and families of subsets are all
//! stored as bitsets. Storage is inline for universes up to 256 elements.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

const WORD: usize = 64;

/// A finite set of `usize` indices.
///
/// The representation is canonical (no trailing zero words), so equality,
/// hashing and ordering do not depend on the universe the set was built in.
/// Sets are ordered as the binary numbers their bitmasks spell out.
#[derive(Clone, Default)]
pub struct ElemSet {
    words: SmallVec<[u64; 4]>,
}

impl ElemSet {
    pub fn new() -> Self {
        ElemSet::default()
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words: SmallVec<[u64; 4]> = SmallVec::new();
        let full_words = n / WORD;
        for _ in 0..full_words {
            words.push(u64::MAX);
        }
        let rest = n % WORD;
        if rest > 0 {
            words.push((1u64 << rest) - 1);
        }
        ElemSet { words }
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = ElemSet::new();
        s.insert(i);
        s
    }

    /// Interprets the low bits of `mask` as a set.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = ElemSet::new();
        if mask != 0 {
            s.words.push(mask);
        }
        s
    }

    /// The low 64 bits as a mask.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while let Some(&0) = self.words.last() {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let (w, b) = (i / WORD, i % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << b;
    }

    pub fn remove(&mut self, i: usize) {
        let (w, b) = (i / WORD, i % WORD);
        if w < self.words.len() {
            self.words[w] &= !(1u64 << b);
            self.trim();
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = (i / WORD, i % WORD);
        w < self.words.len() && (self.words[w] >> b) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.clone();
        for (o, s) in out.words.iter_mut().zip(short.words.iter()) {
            *o |= *s;
        }
        out
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut out = ElemSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    /// `self \ other`.
    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.clone();
        for (o, s) in out.words.iter_mut().zip(other.words.iter()) {
            *o &= !*s;
        }
        out.trim();
        out
    }

    /// Complement relative to the universe `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> ElemSet {
        ElemSet::full(n).difference(self)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// Largest element, if any.
    pub fn max_element(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        let top = self.words[w];
        Some(w * WORD + (WORD - 1 - top.leading_zeros() as usize))
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl PartialEq for ElemSet {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl Eq for ElemSet {}

impl Hash for ElemSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.as_slice().hash(state);
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + b);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

/// All subsets of `{0, .., n-1}` in mask order. Only for `n < 64`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    assert!(n < 64, "powerset universe too large");
    (0..(1u64 << n)).map(ElemSet::from_mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_after_remove() {
        let mut a = ElemSet::singleton(130);
        a.remove(130);
        assert_eq!(a, ElemSet::new());
        assert!(a.is_empty());
    }

    #[test]
    fn complement_and_full() {
        let s: ElemSet = [0, 2].into_iter().collect();
        assert_eq!(s.complement(4), [1, 3].into_iter().collect());
        assert_eq!(ElemSet::full(0), ElemSet::new());
        assert_eq!(ElemSet::full(70).len(), 70);
    }

    #[test]
    fn order_is_numeric() {
        let mut v: Vec<ElemSet> = all_subsets(3).collect();
        v.reverse();
        v.sort();
        let masks: Vec<u64> = v.iter().map(|s| s.to_mask()).collect();
        assert_eq!(masks, (0..8).collect::<Vec<_>>());
        assert!(ElemSet::singleton(64) > ElemSet::singleton(63));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(a in proptest::collection::btree_set(0usize..300, 0..20),
                                        b in proptest::collection::btree_set(0usize..300, 0..20)) {
            let sa: ElemSet = a.iter().copied().collect();
            let sb: ElemSet = b.iter().copied().collect();
            let u: Vec<usize> = sa.union(&sb).iter().collect();
            prop_assert_eq!(u, a.union(&b).copied().collect::<Vec<_>>());
            let i: Vec<usize> = sa.intersection(&sb).iter().collect();
            prop_assert_eq!(i, a.intersection(&b).copied().collect::<Vec<_>>());
            let d: Vec<usize> = sa.difference(&sb).iter().collect();
            prop_assert_eq!(d, a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.intersects(&sb), !a.is_disjoint(&b));
            prop_assert_eq!(sa.max_element(), a.iter().next_back().copied());
        }
    }
}

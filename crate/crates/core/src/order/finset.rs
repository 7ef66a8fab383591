use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};

/// A finite set of named atoms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    /// Builds a set from distinct names, sorted canonically.
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        check_distinct(&elements)?;
        elements.sort_by(|a, b| natural_cmp(a, b));
        Ok(FinSet { elements })
    }

    /// Keeps the given order; names must still be distinct.
    pub fn from_ordered(elements: Vec<String>) -> Result<Self> {
        check_distinct(&elements)?;
        Ok(FinSet { elements })
    }

    /// `{0, 1, .., n-1}` named by their decimal digits.
    pub fn numbered(n: usize) -> Self {
        FinSet {
            elements: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }
}

fn check_distinct(elements: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for e in elements {
        if !seen.insert(e.as_str()) {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    Ok(())
}

/// Orders strings with embedded numbers by numeric value, so `x2 < x10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.char_indices().peekable(), b.char_indices().peekable());
    loop {
        match (ai.peek().copied(), bi.peek().copied()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((_, ca)), Some((_, cb))) if ca.is_ascii_digit() && cb.is_ascii_digit() => {
                let mut na = String::new();
                while let Some(&(_, c)) = ai.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    na.push(c);
                    ai.next();
                }
                let mut nb = String::new();
                while let Some(&(_, c)) = bi.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    nb.push(c);
                    bi.next();
                }
                let ta = na.trim_start_matches('0');
                let tb = nb.trim_start_matches('0');
                let ord = ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            (Some((_, ca)), Some((_, cb))) => {
                if ca != cb {
                    return ca.cmp(&cb);
                }
                ai.next();
                bi.next();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_natural() {
        let s = FinSet::new(["x10", "x2", "b", "a"]).unwrap();
        assert_eq!(s.elements(), ["a", "b", "x2", "x10"]);
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            FinSet::new(["a", "a"]),
            Err(Error::DuplicateElement("a".into()))
        );
    }
}

//! All finite posets of a given size, up to isomorphism.

use std::collections::BTreeSet;

use crate::bitset::ElemSet;

use super::poset::FinPoset;

const LETTERS: &[u8] = b"abcdefgh";

/// Every poset with exactly `n` elements, one per isomorphism class, with
/// elements named `a, b, c, ..` along a linear extension. Supports `n <= 6`.
pub fn posets_of_size(n: usize) -> Vec<FinPoset> {
    assert!(n <= 6, "catalog only covers up to 6 elements");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // Every poset has a natural labelling: a strict order contained in `<`.
    for code in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = code >> bit & 1 == 1;
        }
        if !transitive(&rel) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| encode(&rel, p))
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let labels = (0..n).map(|i| (LETTERS[i] as char).to_string()).collect();
            let up = (0..n)
                .map(|i| {
                    let mut row: ElemSet = (0..n).filter(|&j| rel[i][j]).collect();
                    row.insert(i);
                    row
                })
                .collect();
            out.push(FinPoset::from_up_rows(labels, up));
        }
    }
    out
}

/// Every poset with at most `n` elements.
pub fn posets_up_to(n: usize) -> Vec<FinPoset> {
    (0..=n).flat_map(posets_of_size).collect()
}

/// Every lattice (nonempty, all joins) with at most `n` elements.
pub fn all_lattices(n: usize) -> Vec<FinPoset> {
    posets_up_to(n).into_iter().filter(|p| p.is_lattice()).collect()
}

fn transitive(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] && (0..n).any(|k| rel[j][k] && !rel[i][k]) {
                return false;
            }
        }
    }
    true
}

fn encode(rel: &[Vec<bool>], perm: &[usize]) -> u64 {
    let n = rel.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] {
                code |= 1 << (perm[i] * n + perm[j]);
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == used.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // unlabelled posets: 1, 1, 2, 5, 16, 63
        let counts: Vec<usize> = (0..=5).map(|n| posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn lattice_counts() {
        // lattices with 1..=5 elements: 1, 1, 1, 2, 5
        let counts: Vec<usize> = (1..=5)
            .map(|n| posets_of_size(n).into_iter().filter(|p| p.is_lattice()).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5]);
    }
}

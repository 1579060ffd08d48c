//! Reconstruction of the `E8` node labeling from the Gram facts it must
//! reproduce.

use std::sync::OnceLock;

use itertools::Itertools;

use super::basis::{transcendental_vectors, K3Basis};
use crate::error::{Error, Result};

/// Gram matrix of `⟨λ₁, μ₁, λ₂, μ₂, p₁, q₁, ν₂⟩` that every labeling must give.
pub const TRANSCENDENTAL_GRAM: [[i64; 7]; 7] = [
    [0, 2, 0, 0, 0, 0, 0],
    [2, -4, 0, 0, 0, 0, 0],
    [0, 0, 0, 2, 0, 0, 0],
    [0, 0, 2, -4, 0, 0, 0],
    [0, 0, 0, 0, -2, 0, 1],
    [0, 0, 0, 0, 0, -2, 1],
    [0, 0, 0, 0, 1, 1, -4],
];

/// Unlabeled diagram: chain on nodes 0..=6, node 7 attached to node 2.
const DIAGRAM_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    /// `labels[k]` is the label (1..=8) of diagram node `k`.
    pub labels: [usize; 8],
    pub edges: Vec<(usize, usize)>,
}

impl Labeling {
    fn from_labels(labels: [usize; 8]) -> Self {
        let mut edges: Vec<(usize, usize)> = DIAGRAM_EDGES
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (labels[a], labels[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort();
        Labeling { labels, edges }
    }

    pub fn basis(&self) -> K3Basis {
        K3Basis::new(&self.edges)
    }
}

fn sparse(v: &super::basis::AmbientVector) -> Vec<(usize, i64)> {
    v.nonzero()
        .map(|(i, c)| (i, i64::try_from(c.to_integer()).expect("small integer coordinate")))
        .collect()
}

fn matches(basis: &K3Basis, vs: &[Vec<(usize, i64)>]) -> bool {
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let mut s = 0i64;
            for &(a, x) in &vs[i] {
                for &(b, y) in &vs[j] {
                    s += x * y * basis.entry(a, b);
                }
            }
            if s != TRANSCENDENTAL_GRAM[i][j] {
                return false;
            }
        }
    }
    true
}

/// All labelings consistent with the required Gram matrix, in
/// lexicographic order of the label vector.
pub fn surviving_labelings() -> &'static [Labeling] {
    static CELL: OnceLock<Vec<Labeling>> = OnceLock::new();
    CELL.get_or_init(|| {
        let vs: Vec<Vec<(usize, i64)>> = transcendental_vectors().iter().map(sparse).collect();
        (1..=8usize)
            .permutations(8)
            .map(|perm| Labeling::from_labels(perm.try_into().expect("eight labels")))
            .filter(|l| matches(&l.basis(), &vs))
            .collect()
    })
}

/// Lexicographically least surviving labeling.
pub fn derive_e8_labeling() -> Result<Labeling> {
    surviving_labelings().first().cloned().ok_or(Error::LabelingFailed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_labeling_is_chain_with_branch_at_three() {
        let l = derive_e8_labeling().unwrap();
        assert_eq!(l.labels, [1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(l.edges, vec![(1, 2), (2, 3), (3, 4), (3, 8), (4, 5), (5, 6), (6, 7)]);
    }

    #[test]
    fn four_survivors() {
        let s = surviving_labelings();
        assert_eq!(s.len(), 4);
        for l in s {
            assert!(l.edges.contains(&(1, 2)) && l.edges.contains(&(4, 5)));
        }
    }
}

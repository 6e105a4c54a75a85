use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::intmat::IntMatrix;

/// A permutation of sheets: sheet j goes to `images[j]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn transposition(n: usize, p: usize, q: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(p, q);
        Self(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, j: usize) -> usize {
        self.0[j]
    }

    /// `self` after `first`: j ↦ self(first(j)).
    pub fn after(&self, first: &Permutation) -> Permutation {
        Self(first.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (j, &i) in self.0.iter().enumerate() {
            inv[i] = j;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &i)| i == j)
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lengths = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// The swapped pair (p, q) with p < q, if this is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.0.len()).filter(|&j| self.0[j] != j).collect();
        match moved[..] {
            [p, q] => Some((p, q)),
            _ => None,
        }
    }

    /// Matrix with a 1 at (images[j], j), so that it sends e_j to e_{images[j]}.
    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.0.len();
        let mut m = IntMatrix::zeros(n, n);
        for (j, &i) in self.0.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    pub fn from_matrix(m: &IntMatrix) -> Option<Permutation> {
        if !m.is_permutation() {
            return None;
        }
        let images = (0..m.cols()).map(|j| (0..m.rows()).find(|&i| m.get(i, j) == 1).unwrap_or(0)).collect();
        Self::from_images(images)
    }
}

/// Whether the group generated by `gens` moves every point to every other.
pub fn is_transitive(n: usize, gens: &[Permutation]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(j) = queue.pop_front() {
        for g in gens {
            let k = g.apply(j);
            if !std::mem::replace(&mut seen[k], true) {
                queue.push_back(k);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Whether `target` lies in the group generated by `gens`; gives up (None)
/// once more than `cap` elements have been enumerated.
pub fn generates(gens: &[Permutation], target: &Permutation, cap: usize) -> Option<bool> {
    let id = Permutation::identity(target.len());
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        if &p == target {
            return Some(true);
        }
        for g in gens {
            let q = g.after(&p);
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(false)
}

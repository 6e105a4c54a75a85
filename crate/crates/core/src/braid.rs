//! The braid group action S ↦ A·S·Aᵀ on unipotent upper-triangular integer
//! matrices, sign conjugation, and a breadth-first search for a word (plus
//! signs) carrying one matrix to another.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::intmat::{IntMatrix, IntMatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("matrix is not unipotent upper triangular")]
    NotUnipotent,
    #[error("generator b{index} out of range for {n}x{n} matrices")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("matrices have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("no equivalence found up to word length {depth}")]
    NotFound { depth: usize },
    #[error("search stopped after {nodes} nodes")]
    NodeLimit { nodes: usize },
    #[error("cannot parse braid letter {0:?}")]
    BadLetter(String),
    #[error(transparent)]
    Matrix(#[from] IntMatrixError),
}

/// bᵢ or bᵢ⁻¹, with i counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.index)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::BadLetter(s.to_string());
        let body = s.trim().strip_prefix('b').ok_or_else(bad)?;
        let (digits, inverse) = match body.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (body, false),
        };
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Letter { index, inverse })
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BraidWord {
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn generator(index: usize) -> Self {
        Self::new(vec![Letter { index, inverse: false }])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn then(mut self, letter: Letter) -> Self {
        self.letters.push(letter);
        self
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        Ok(Self::new(letters))
    }
}

/// A^{βᵢ}(S): the identity with rows/cols (i, i+1) replaced by [[0, 1], [1, −s]]
/// (or [[−s, 1], [1, 0]] for the inverse), s = S[i][i+1].
pub fn braid_matrix(s: &IntMatrix, index: usize, inverse: bool) -> Result<IntMatrix, BraidError> {
    check(s)?;
    let n = s.rows();
    if index == 0 || index >= n {
        return Err(BraidError::GeneratorOutOfRange { index, n });
    }
    let (i, j) = (index - 1, index);
    let sij = s.get(i, j);
    let mut a = IntMatrix::identity(n);
    if inverse {
        a.set(i, i, -sij);
        a.set(j, j, 0);
    } else {
        a.set(i, i, 0);
        a.set(j, j, -sij);
    }
    a.set(i, j, 1);
    a.set(j, i, 1);
    Ok(a)
}

fn check(s: &IntMatrix) -> Result<(), BraidError> {
    if s.is_unipotent_upper() {
        Ok(())
    } else {
        Err(BraidError::NotUnipotent)
    }
}

pub fn act_generator(s: &IntMatrix, index: usize, inverse: bool) -> Result<IntMatrix, BraidError> {
    let a = braid_matrix(s, index, inverse)?;
    Ok(a.mul(s)?.mul(&a.transpose())?)
}

/// Applies the letters left to right.
pub fn act_word(s: &IntMatrix, word: &BraidWord) -> Result<IntMatrix, BraidError> {
    check(s)?;
    let mut out = s.clone();
    for l in &word.letters {
        out = act_generator(&out, l.index, l.inverse)?;
    }
    Ok(out)
}

/// D·S·D with D = diag(signs).
pub fn sign_conjugate(s: &IntMatrix, signs: &[i64]) -> IntMatrix {
    let mut out = s.clone();
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            out.set(i, j, signs[i] * s.get(i, j) * signs[j]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCertificate {
    pub word: BraidWord,
    pub signs: Vec<i64>,
    pub transformed: IntMatrix,
    #[serde(skip)]
    pub nodes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_depth: 6,
            max_nodes: 1_000_000,
        }
    }
}

/// Sign vectors in lexicographic order with +1 before −1.
fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u64..1 << n).map(move |mask| (0..n).map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 }).collect())
}

fn matches_up_to_signs(s: &IntMatrix, target: &IntMatrix) -> Option<Vec<i64>> {
    let n = s.rows();
    for i in 0..n {
        for j in 0..n {
            if s.get(i, j).abs() != target.get(i, j).abs() {
                return None;
            }
        }
    }
    sign_vectors(n).find(|d| sign_conjugate(s, d) == *target)
}

/// Shortest word, then lexicographically first in the letter order
/// b1, b1⁻¹, b2, b2⁻¹, …, such that some sign conjugation of word·source is
/// the target.
pub fn search_equivalence(source: &IntMatrix, target: &IntMatrix, limits: SearchLimits) -> Result<EquivalenceCertificate, BraidError> {
    check(source)?;
    check(target)?;
    if source.rows() != target.rows() {
        return Err(BraidError::SizeMismatch(source.rows(), target.rows()));
    }
    let n = source.rows();
    let letters: Vec<Letter> = (1..n).flat_map(|index| [false, true].map(|inverse| Letter { index, inverse })).collect();
    let mut seen: HashSet<IntMatrix> = HashSet::from([source.clone()]);
    let mut queue = VecDeque::from([(source.clone(), BraidWord::default())]);
    let mut nodes = 0;
    while let Some((s, word)) = queue.pop_front() {
        nodes += 1;
        if let Some(signs) = matches_up_to_signs(&s, target) {
            return Ok(EquivalenceCertificate {
                word,
                signs,
                transformed: s,
                nodes,
            });
        }
        if nodes >= limits.max_nodes {
            return Err(BraidError::NodeLimit { nodes });
        }
        if word.len() == limits.max_depth {
            continue;
        }
        for &l in &letters {
            // overflowing branches are dropped
            let Ok(next) = act_generator(&s, l.index, l.inverse) else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back((next, word.clone().then(l)));
            }
        }
    }
    Err(BraidError::NotFound { depth: limits.max_depth })
}

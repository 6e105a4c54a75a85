//! Small dense integer matrices for monodromy, quiver, Stokes, Gram and braid
//! data. Arithmetic is checked; overflow surfaces as an error instead of a
//! wrapped value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntMatrixError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("rows have unequal lengths")]
    Ragged,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, IntMatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(IntMatrixError::Ragged);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Panicking constructor for literals in code and tests.
    pub fn from_literal<const R: usize, const C: usize>(rows: [[i64; C]; R]) -> Self {
        Self {
            rows: R,
            cols: C,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, IntMatrixError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, IntMatrixError> {
        self.zip_with(other, i64::checked_sub)
    }

    fn zip_with(&self, other: &Self, op: fn(i64, i64) -> Option<i64>) -> Result<Self, IntMatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(IntMatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(a, b).ok_or(IntMatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, IntMatrixError> {
        if self.cols != other.rows {
            return Err(IntMatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let p = self.get(i, k).checked_mul(other.get(k, j)).ok_or(IntMatrixError::Overflow)?;
                    acc = acc.checked_add(p).ok_or(IntMatrixError::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j) == 0))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.transpose().is_upper_triangular()
    }

    /// Upper triangular with ones on the diagonal.
    pub fn is_unipotent_upper(&self) -> bool {
        self.is_square() && self.is_upper_triangular() && (0..self.rows).all(|i| self.get(i, i) == 1)
    }

    pub fn is_permutation(&self) -> bool {
        self.is_square()
            && self.data.iter().all(|&v| v == 0 || v == 1)
            && (0..self.rows).all(|i| (0..self.cols).map(|j| self.get(i, j)).sum::<i64>() == 1)
            && (0..self.cols).all(|j| (0..self.rows).map(|i| self.get(i, j)).sum::<i64>() == 1)
    }

    /// Exact determinant by fraction-free elimination over big integers.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &m[n - 1][n - 1]
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..self.rows {
                if i != rank && !m[i][col].is_zero() {
                    let a = m[rank][col].clone();
                    let b = m[i][col].clone();
                    for j in 0..self.cols {
                        m[i][j] = &a * &m[i][j] - &b * &m[rank][j];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Conjugation P·self·Pᵀ where `perm[j]` is the new index of old index j.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(perm[i], perm[j], self.get(i, j));
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = IntMatrixError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        Self::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_rank() {
        let m = IntMatrix::from_literal([[2, 1], [7, 4]]);
        assert_eq!(m.det(), BigInt::from(1));
        let swap = IntMatrix::from_literal([[0, 1], [1, 0]]);
        assert_eq!(swap.det(), BigInt::from(-1));
        let b = IntMatrix::from_literal([[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(b.rank(), 3);
        assert_eq!(IntMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let m = IntMatrix::from_literal([[i64::MAX, 1], [0, 1]]);
        assert_eq!(m.add(&m), Err(IntMatrixError::Overflow));
    }

    #[test]
    fn serde_as_nested_rows() {
        let m = IntMatrix::from_literal([[1, -1], [0, 1]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[1,-1],[0,1]]");
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<IntMatrix>("[[1],[1,2]]").is_err());
    }

    #[test]
    fn predicates() {
        assert!(IntMatrix::identity(3).is_permutation());
        assert!(IntMatrix::from_literal([[1, 5], [0, 1]]).is_unipotent_upper());
        assert!(!IntMatrix::from_literal([[1, 5], [1, 1]]).is_upper_triangular());
        assert!(IntMatrix::from_literal([[1, 0], [3, 1]]).is_lower_triangular());
    }
}

use std::fmt;

use super::{ExactError, Rational, ThetaLaurent};

/// Dense row-major matrix over ℚ[θ, θ⁻¹].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ThetaLaurent>,
}

impl ThetaMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ThetaLaurent::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                ThetaLaurent::one()
            } else {
                ThetaLaurent::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ThetaLaurent) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Constant matrix from rational rows.
    pub fn from_rationals(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(rows.len(), cols, |i, j| ThetaLaurent::constant(rows[i][j].clone()))
    }

    pub fn from_columns(columns: &[Vec<ThetaLaurent>]) -> Self {
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ThetaLaurent {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ThetaLaurent) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[ThetaLaurent] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[ThetaLaurent] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ThetaLaurent> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&ThetaLaurent) -> ThetaLaurent) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ThetaLaurent::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ThetaLaurent::zero();
            for k in 0..self.cols {
                acc += &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[ThetaLaurent]) -> Result<Vec<ThetaLaurent>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = ThetaLaurent::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc += &(a * x);
                }
                acc
            })
            .collect())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        Ok(())
    }

    /// Row-major entries rendered with the given variable name.
    pub fn to_strings(&self, var: &str) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.to_string_in(var)).collect())
            .collect()
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings("t") {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

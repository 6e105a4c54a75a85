//! The localized Fourier–Laplace transform of the Gauss–Manin system of f,
//! in exact arithmetic: connection matrix, cyclic-vector operator, Newton
//! polygon, and the gauge comparison with the quantum connection.

mod gauge;
mod newton;
mod operator;
mod reduce;

pub use gauge::{gauge_compare, GaugeReport};
pub use newton::{newton_polygon, newton_slopes, NewtonPolygon, NewtonReport};
pub use operator::{cyclic_operator, DiffOperator};
pub use reduce::{Reducer, ReductionOrder};

use thiserror::Error;

use crate::exact::{ExactError, ThetaLaurent, ThetaMatrix};
use crate::geometry::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GmError {
    #[error("rewriting x^{exponent} dx into the basis failed")]
    ReductionFailure { exponent: i64 },
    #[error("{0} needs both positive and negative exponents")]
    UnsupportedPolynomial(String),
    #[error("no cyclic vector among the basis vectors and the all-ones vector")]
    NoCyclicVector,
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("operator coefficients must be listed for powers 0..=n with a nonzero top coefficient")]
    BadOperator,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// ∇_{θ∂θ} = θ∂θ + M(θ) on the basis x⁻¹dx, …, x^{−n}dx.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaConnection {
    pub matrix: ThetaMatrix,
}

impl ThetaConnection {
    pub fn new(matrix: ThetaMatrix) -> Result<Self, GmError> {
        if !matrix.is_square() {
            return Err(GmError::RankMismatch {
                left: matrix.rows(),
                right: matrix.cols(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.rank())
            .map(|i| if i == 1 { "dx/x".to_string() } else { format!("dx/x^{i}") })
            .collect()
    }

    /// θ∂θ v + M v.
    pub fn apply(&self, v: &[ThetaLaurent]) -> Result<Vec<ThetaLaurent>, GmError> {
        let mv = self.matrix.mul_vec(v)?;
        Ok(v.iter().zip(mv).map(|(x, y)| x.theta_derivative() + y).collect())
    }
}

/// Column i of M is θ⁻¹ times the reduction of f·x^{−i}dx.
pub fn gm_connection(f: &LaurentPoly) -> Result<ThetaConnection, GmError> {
    let reducer = Reducer::new(f)?;
    let n = reducer.rank();
    let columns = (1..=n as i64)
        .map(|i| {
            let coords = reducer.reduce(&reducer.f_times(-i), ReductionOrder::TopFirst)?;
            Ok(coords.into_iter().map(|c| c.shift(-1)).collect())
        })
        .collect::<Result<Vec<Vec<ThetaLaurent>>, GmError>>()?;
    ThetaConnection::new(ThetaMatrix::from_columns(&columns))
}

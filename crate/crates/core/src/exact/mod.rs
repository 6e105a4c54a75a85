//! Exact arithmetic: big rationals, Laurent polynomials in one variable θ,
//! their fractions, dense matrices over them, and fraction-free solving.

mod fraction;
mod laurent;
mod matrix;
mod poly;
mod solve;

pub use fraction::LaurentFraction;
pub use laurent::ThetaLaurent;
pub use matrix::ThetaMatrix;
pub use solve::fraction_free_solve;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("singular system: determinant vanishes as a rational function")]
    SingularSystem,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// True when the rational is in canonical form: positive denominator and
/// coprime numerator/denominator.
pub fn is_canonical_rational(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// Parses "p", "-p" or "p/q" into a rational.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let text = text.trim();
    let bad = || ExactError::InvalidRational(text.to_string());
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational as "p" or "p/q".
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

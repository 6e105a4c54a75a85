//! Orbifold quantum cohomology of ℙ(a, b) at q = 1, modelled as
//! ℚ[x, x⁻¹]/(x^{a+b} − b/a) with y = x⁻¹.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{format_rational, rat, Rational, ThetaLaurent, ThetaMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("weights ({a}, {b}) unsupported: need a, b ≥ 1 and gcd(a, b) = 1")]
    UnsupportedWeights { a: u32, b: u32 },
}

/// Monomial basis xᵏ, k ∈ {−b, …, a − 1}, in ascending orbifold degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldBasis {
    pub a: u32,
    pub b: u32,
    pub exponents: Vec<i64>,
    pub degrees: Vec<Rational>,
}

impl OrbifoldBasis {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Names in terms of x (k ≥ 0) and y = x⁻¹ (k < 0).
    pub fn labels(&self) -> Vec<String> {
        self.exponents
            .iter()
            .map(|&k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                -1 => "y".to_string(),
                k if k > 0 => format!("x^{k}"),
                k => format!("y^{}", -k),
            })
            .collect()
    }

    fn position(&self, k: i64) -> usize {
        self.exponents.iter().position(|&e| e == k).expect("exponent in window")
    }
}

fn check_weights(a: u32, b: u32) -> Result<(), QuantumError> {
    if a == 0 || b == 0 || a.gcd(&b) != 1 {
        Err(QuantumError::UnsupportedWeights { a, b })
    } else {
        Ok(())
    }
}

pub fn orbifold_data(a: u32, b: u32) -> Result<OrbifoldBasis, QuantumError> {
    check_weights(a, b)?;
    let degree = |k: i64| if k >= 0 { rat(k, a as i64) } else { rat(-k, b as i64) };
    let mut exponents: Vec<i64> = (-(b as i64)..a as i64).collect();
    exponents.sort_by_key(|&k| degree(k));
    let degrees = exponents.iter().map(|&k| degree(k)).collect();
    Ok(OrbifoldBasis { a, b, exponents, degrees })
}

/// Brings xᵉ into the window {−b, …, a − 1}; returns (exponent, scalar).
fn reduce_exponent(mut e: i64, a: i64, b: i64) -> (i64, Rational) {
    let up = rat(b, a);
    let down = rat(a, b);
    let mut c = Rational::one();
    while e >= a {
        e -= a + b;
        c *= &up;
    }
    while e < -b {
        e += a + b;
        c *= &down;
    }
    (e, c)
}

/// Matrix of multiplication by −K = xᵃ + yᵇ, columns indexed by the basis.
pub fn quantum_mult(a: u32, b: u32) -> Result<Vec<Vec<Rational>>, QuantumError> {
    let basis = orbifold_data(a, b)?;
    let (ai, bi) = (a as i64, b as i64);
    let n = basis.len();
    let mut c = vec![vec![Rational::zero(); n]; n];
    for (col, &k) in basis.exponents.iter().enumerate() {
        for e in [k + ai, k - bi] {
            let (r, s) = reduce_exponent(e, ai, bi);
            c[basis.position(r)][col] += s;
        }
    }
    Ok(c)
}

/// ∇_{z∂z} = z∂z − C/z + μ.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumConnectionData {
    pub basis: OrbifoldBasis,
    pub c: Vec<Vec<Rational>>,
    /// Diagonal of the grading operator.
    pub mu: Vec<Rational>,
}

impl QuantumConnectionData {
    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    /// The connection matrix −C·z⁻¹ + μ as a matrix of Laurent polynomials.
    pub fn connection_matrix(&self) -> ThetaMatrix {
        let n = self.rank();
        ThetaMatrix::from_fn(n, n, |i, j| {
            let mut entry = ThetaLaurent::monomial(-self.c[i][j].clone(), -1);
            if i == j {
                entry.add_term(0, &self.mu[i]);
            }
            entry
        })
    }

    pub fn trace_mu(&self) -> Rational {
        self.mu.iter().sum()
    }

    pub fn summary(&self) -> QuantumSummary {
        let strings = |m: &Vec<Vec<Rational>>| m.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        QuantumSummary {
            a: self.basis.a,
            b: self.basis.b,
            basis: self.basis.labels(),
            degrees: self.basis.degrees.iter().map(format_rational).collect(),
            c: strings(&self.c),
            mu: self.mu.iter().map(format_rational).collect(),
            irregular_singular_at: "z = 0",
            regular_singular_at: "z = infinity",
        }
    }
}

/// JSON-friendly view with rationals as strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantumSummary {
    pub a: u32,
    pub b: u32,
    pub basis: Vec<String>,
    pub degrees: Vec<String>,
    pub c: Vec<Vec<String>>,
    pub mu: Vec<String>,
    pub irregular_singular_at: &'static str,
    pub regular_singular_at: &'static str,
}

pub fn quantum_connection(a: u32, b: u32) -> Result<QuantumConnectionData, QuantumError> {
    let basis = orbifold_data(a, b)?;
    let c = quantum_mult(a, b)?;
    let half = rat(1, 2);
    let mu = basis.degrees.iter().map(|d| d - &half).collect();
    Ok(QuantumConnectionData { basis, c, mu })
}

/// The scalar by which C^{a+b} acts: ((a+b)/a)^{a+b}·(b/a)^{−b}.
pub fn power_scalar(a: u32, b: u32) -> Rational {
    let n = (a + b) as i32;
    let base = rat((a + b) as i64, a as i64);
    num_traits::pow::Pow::pow(&base, n) * num_traits::pow::Pow::pow(&rat(a as i64, b as i64), b as i32)
}

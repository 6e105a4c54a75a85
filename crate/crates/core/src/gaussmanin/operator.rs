use std::fmt;

use super::{GmError, ThetaConnection};
use crate::exact::{fraction_free_solve, ExactError, LaurentFraction, ThetaLaurent, ThetaMatrix};

/// Σₖ aₖ(θ)·(θ∂θ)ᵏ, monic in the top power.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator {
    /// a₀, …, aₙ.
    coeffs: Vec<LaurentFraction>,
}

impl DiffOperator {
    pub fn new(coeffs: Vec<LaurentFraction>) -> Result<Self, GmError> {
        let top = coeffs.last().ok_or(GmError::BadOperator)?;
        if top.is_zero() {
            return Err(GmError::BadOperator);
        }
        let top = top.clone();
        let coeffs = coeffs.iter().map(|c| c.div(&top)).collect::<Result<_, ExactError>>()?;
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// aₖ, the coefficient of (θ∂θ)ᵏ.
    pub fn coefficient(&self, k: usize) -> &LaurentFraction {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[LaurentFraction] {
        &self.coeffs
    }

    /// aₙ, …, a₀.
    pub fn descending(&self) -> Vec<LaurentFraction> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Human form such as "(t·d/dt)^2 - 4*t^-2".
    pub fn to_string_in(&self, var: &str) -> String {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for k in (0..=self.order()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let op = match k {
                0 => String::new(),
                1 => format!("({var}·d/d{var})"),
                _ => format!("({var}·d/d{var})^{k}"),
            };
            let text = c.to_string_in(var);
            let single = c.denominator().is_one() && c.numerator().num_terms() == 1;
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, text),
            };
            let piece = if op.is_empty() {
                if single {
                    body
                } else {
                    format!("({body})")
                }
            } else if body == "1" {
                op
            } else if single {
                format!("{body}*{op}")
            } else {
                format!("({body})*{op}")
            };
            pieces.push((neg, piece));
        }
        let mut out = String::new();
        for (i, (neg, piece)) in pieces.iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(piece);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Σ aₖ ∇ᵏm for the connection and vector given.
    pub fn apply_to(&self, conn: &ThetaConnection, m: &[ThetaLaurent]) -> Result<Vec<LaurentFraction>, GmError> {
        let mut total = vec![LaurentFraction::from_laurent(ThetaLaurent::zero()); m.len()];
        let mut v = m.to_vec();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                v = conn.apply(&v)?;
            }
            for (t, x) in total.iter_mut().zip(&v) {
                *t = t.add(&a.mul(&LaurentFraction::from_laurent(x.clone())));
            }
        }
        Ok(total)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

fn unit(n: usize, i: usize) -> Vec<ThetaLaurent> {
    (0..n).map(|k| if k == i { ThetaLaurent::one() } else { ThetaLaurent::zero() }).collect()
}

fn operator_for(conn: &ThetaConnection, m: Vec<ThetaLaurent>) -> Result<Option<DiffOperator>, GmError> {
    let n = conn.rank();
    let mut vs = vec![m];
    for _ in 0..n {
        let next = conn.apply(vs.last().unwrap())?;
        vs.push(next);
    }
    // [v_{n−1} … v₀]·x = vₙ, then P = (θ∂θ)ⁿ − Σ xₖ (θ∂θ)^{n−1−k}
    let columns: Vec<Vec<ThetaLaurent>> = (0..n).map(|k| vs[n - 1 - k].clone()).collect();
    let x = match fraction_free_solve(&ThetaMatrix::from_columns(&columns), &vs[n]) {
        Ok(x) => x,
        Err(ExactError::SingularSystem) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut coeffs = vec![LaurentFraction::from_laurent(ThetaLaurent::zero()); n + 1];
    coeffs[n] = LaurentFraction::from_laurent(ThetaLaurent::one());
    for (k, xk) in x.iter().enumerate() {
        coeffs[n - 1 - k] = xk.neg();
    }
    Ok(Some(DiffOperator::new(coeffs)?))
}

/// Scalar operator annihilating m = e_seed (0-based); falls back to later
/// basis vectors and then to (1, …, 1) when m is not cyclic.
pub fn cyclic_operator(conn: &ThetaConnection, seed: usize) -> Result<DiffOperator, GmError> {
    let n = conn.rank();
    let candidates = (seed..n).map(|i| unit(n, i)).chain(std::iter::once(vec![ThetaLaurent::one(); n]));
    for m in candidates {
        if let Some(op) = operator_for(conn, m)? {
            return Ok(op);
        }
    }
    Err(GmError::NoCyclicVector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::gaussmanin::gm_connection;
    use crate::geometry::LaurentPoly;

    fn lf(c: (i64, i64), k: i64) -> LaurentFraction {
        LaurentFraction::from_laurent(ThetaLaurent::monomial(rat(c.0, c.1), k))
    }

    fn zero() -> LaurentFraction {
        LaurentFraction::from_laurent(ThetaLaurent::zero())
    }

    #[test]
    fn p13_operator() {
        let conn = gm_connection(&LaurentPoly::mirror(1, 3)).unwrap();
        let p = cyclic_operator(&conn, 0).unwrap();
        assert_eq!(p.descending(), vec![lf((1, 1), 0), lf((4, 1), 0), lf((32, 9), 0), zero(), lf((-256, 27), -4)]);
        assert_eq!(p.to_string_in("t"), "(t·d/dt)^4 + 4*(t·d/dt)^3 + 32/9*(t·d/dt)^2 - 256/27*t^-4");
        let m = [ThetaLaurent::one(), ThetaLaurent::zero(), ThetaLaurent::zero(), ThetaLaurent::zero()];
        assert!(p.apply_to(&conn, &m).unwrap().iter().all(LaurentFraction::is_zero));
    }

    #[test]
    fn p1_operator() {
        let conn = gm_connection(&LaurentPoly::mirror(1, 1)).unwrap();
        let p = cyclic_operator(&conn, 0).unwrap();
        assert_eq!(p.descending(), vec![lf((1, 1), 0), zero(), lf((-4, 1), -2)]);
    }

    #[test]
    fn scalar_connection() {
        let conn = ThetaConnection::new(ThetaMatrix::from_rationals(&[vec![rat_int(5)]])).unwrap();
        let p = cyclic_operator(&conn, 0).unwrap();
        assert_eq!(p.descending(), vec![lf((1, 1), 0), lf((-5, 1), 0)]);
        assert_eq!(p.to_string_in("t"), "(t·d/dt) - 5");
    }

    #[test]
    fn non_cyclic_seed_falls_back() {
        // diag(0, 1): e₁ is an eigenvector, (1, 1) is cyclic
        let conn = ThetaConnection::new(ThetaMatrix::from_rationals(&[vec![rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(1)]])).unwrap();
        let p = cyclic_operator(&conn, 0).unwrap();
        assert_eq!(p.order(), 2);
        assert!(p.apply_to(&conn, &[ThetaLaurent::one(), ThetaLaurent::one()]).unwrap().iter().all(LaurentFraction::is_zero));
    }

    #[test]
    fn scalar_identity_has_no_cyclic_vector() {
        let conn = ThetaConnection::new(ThetaMatrix::identity(2)).unwrap();
        assert_eq!(cyclic_operator(&conn, 0), Err(GmError::NoCyclicVector));
    }

    #[test]
    fn relation_holds_for_other_weights() {
        for (a, b) in [(1, 2), (2, 3), (2, 1), (3, 2)] {
            let conn = gm_connection(&LaurentPoly::mirror(a, b)).unwrap();
            let p = cyclic_operator(&conn, 0).unwrap();
            assert_eq!(p.order(), (a + b) as usize);
            let mut m = vec![ThetaLaurent::zero(); p.order()];
            m[0] = ThetaLaurent::one();
            assert!(p.apply_to(&conn, &m).unwrap().iter().all(LaurentFraction::is_zero), "({a},{b})");
        }
    }
}

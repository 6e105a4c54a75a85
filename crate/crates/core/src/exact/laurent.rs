use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly};
use super::{format_rational, is_canonical_rational, Rational};

/// Laurent polynomial in θ with rational coefficients.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ThetaLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl ThetaLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// c·θᵏ
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// Lowest exponent present.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present.
    pub fn deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplication by θᵏ.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// The Euler derivation θ∂θ: θᵏ ↦ k·θᵏ.
    pub fn theta_derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&k, c)| (k, c * Rational::from_integer(k.into()))),
        )
    }

    /// Substitution θ ↦ −θ.
    pub fn negate_variable(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, if k % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// Every coefficient nonzero and in lowest terms.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .values()
            .all(|c| !c.is_zero() && is_canonical_rational(c))
    }

    /// Splits a nonzero value into θ^shift · P(θ) with P(0) ≠ 0.
    pub(crate) fn to_poly_parts(&self) -> (i64, Poly) {
        let Some(lo) = self.ord() else {
            return (0, Vec::new());
        };
        let hi = self.deg().unwrap_or(lo);
        let mut p = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (&k, c) in &self.terms {
            p[(k - lo) as usize] = c.clone();
        }
        (lo, p)
    }

    pub(crate) fn from_poly_parts(shift: i64, p: &Poly) -> Self {
        Self::from_terms(
            p.iter()
                .enumerate()
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    /// Exact quotient in ℚ[θ, θ⁻¹], or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ThetaLaurent) -> Option<ThetaLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.num_terms() == 1 {
            let (k, c) = d.terms().next()?;
            return Some(self.scale(&c.recip()).shift(-k));
        }
        let (sn, pn) = self.to_poly_parts();
        let (sd, pd) = d.to_poly_parts();
        let (q, r) = poly::div_rem(&pn, &pd);
        if !r.is_empty() {
            return None;
        }
        Some(Self::from_poly_parts(sn - sd, &q))
    }

    /// Monic polynomial gcd of the parts with monomial content removed.
    pub fn gcd(&self, other: &ThetaLaurent) -> ThetaLaurent {
        let (_, a) = self.to_poly_parts();
        let (_, b) = other.to_poly_parts();
        Self::from_poly_parts(0, &poly::gcd(&a, &b))
    }

    pub fn eval_f64(&self, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, c)| super::rational_to_f64(c) * theta.powi(k as i32))
            .sum()
    }

    /// Renders with the given variable name, e.g. `4/3*t^-1 + 1`.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = match k {
                0 => format_rational(&abs),
                _ => {
                    let pow = if k == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{k}")
                    };
                    if abs.is_one() {
                        pow
                    } else {
                        format!("{}*{pow}", format_rational(&abs))
                    }
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for ThetaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl From<Rational> for ThetaLaurent {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a ThetaLaurent> for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn add(self, rhs: &'a ThetaLaurent) -> ThetaLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ThetaLaurent {
    type Output = ThetaLaurent;
    fn add(mut self, rhs: ThetaLaurent) -> ThetaLaurent {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a ThetaLaurent> for ThetaLaurent {
    fn add_assign(&mut self, rhs: &'a ThetaLaurent) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl Neg for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn neg(self) -> ThetaLaurent {
        ThetaLaurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for ThetaLaurent {
    type Output = ThetaLaurent;
    fn neg(self) -> ThetaLaurent {
        -&self
    }
}

impl<'a> Sub<&'a ThetaLaurent> for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn sub(self, rhs: &'a ThetaLaurent) -> ThetaLaurent {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, &-c);
        }
        out
    }
}

impl Sub for ThetaLaurent {
    type Output = ThetaLaurent;
    fn sub(self, rhs: ThetaLaurent) -> ThetaLaurent {
        &self - &rhs
    }
}

impl<'a> Mul<&'a ThetaLaurent> for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn mul(self, rhs: &'a ThetaLaurent) -> ThetaLaurent {
        let mut out = ThetaLaurent::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

impl Mul for ThetaLaurent {
    type Output = ThetaLaurent;
    fn mul(self, rhs: ThetaLaurent) -> ThetaLaurent {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn t(k: i64) -> ThetaLaurent {
        ThetaLaurent::monomial(rat_int(1), k)
    }

    #[test]
    fn binomial_square() {
        let s = &t(1) + &t(-1);
        let sq = &s * &s;
        let expected = ThetaLaurent::from_terms([(2, rat_int(1)), (0, rat_int(2)), (-2, rat_int(1))]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn euler_derivative_of_inverse() {
        let v = ThetaLaurent::monomial(rat(4, 3), -1);
        assert_eq!(v.theta_derivative(), ThetaLaurent::monomial(rat(-4, 3), -1));
        assert!(ThetaLaurent::one().theta_derivative().is_zero());
    }

    #[test]
    fn inverse_scaling() {
        let v = ThetaLaurent::monomial(rat(-256, 27), -4);
        assert_eq!(v.scale(&rat(-27, 256)), t(-4));
        assert!(v.scale(&rat_int(0)).is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let v = &t(3) - &t(3);
        assert!(v.is_zero());
        assert_eq!(v.ord(), None);
    }

    #[test]
    fn exact_division() {
        // (θ² − θ⁻²) / (θ − θ⁻¹) = θ + θ⁻¹
        let n = &t(2) - &t(-2);
        let d = &t(1) - &t(-1);
        assert_eq!(n.div_exact(&d).unwrap(), &t(1) + &t(-1));
        assert!(t(0).div_exact(&(&t(1) + &t(0))).is_none());
        assert_eq!(t(3).div_exact(&ThetaLaurent::monomial(rat_int(2), 5)).unwrap(),
            ThetaLaurent::monomial(rat(1, 2), -2));
    }

    #[test]
    fn display() {
        let v = ThetaLaurent::from_terms([(0, rat(32, 9)), (-4, rat(-256, 27)), (1, rat_int(1))]);
        assert_eq!(v.to_string(), "t + 32/9 - 256/27*t^-4");
        assert_eq!(ThetaLaurent::zero().to_string(), "0");
    }

    fn arb_laurent() -> impl Strategy<Value = ThetaLaurent> {
        prop::collection::vec((-4i64..5, -20i64..21, 1i64..7), 0..5).prop_map(|ts| {
            ThetaLaurent::from_terms(ts.into_iter().map(|(k, n, d)| (k, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            let prod = &a * &b;
            prop_assert!(prod.is_canonical());
            prop_assert!((&(&a - &b) + &b).is_canonical());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_laurent(), b in arb_laurent()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn leibniz_rule(a in arb_laurent(), b in arb_laurent()) {
            let lhs = (&a * &b).theta_derivative();
            let rhs = &(&a.theta_derivative() * &b) + &(&a * &b.theta_derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }
}

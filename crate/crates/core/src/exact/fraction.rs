use std::fmt;

use num_traits::Zero;

use super::poly;
use super::{ExactError, ThetaLaurent};

/// Reduced quotient of two Laurent polynomials in θ.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term and leading coefficient 1, coprime to the numerator. Units
/// c·θᵏ are absorbed into the numerator, so a fraction that is a Laurent
/// polynomial always has denominator 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentFraction {
    num: ThetaLaurent,
    den: ThetaLaurent,
}

impl LaurentFraction {
    pub fn new(num: ThetaLaurent, den: ThetaLaurent) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_laurent(ThetaLaurent::zero()));
        }
        let (sn, pn) = num.to_poly_parts();
        let (sd, pd) = den.to_poly_parts();
        let g = poly::gcd(&pn, &pd);
        let (mut n, _) = poly::div_rem(&pn, &g);
        let (mut d, _) = poly::div_rem(&pd, &g);
        let lead = d.last().cloned().expect("nonzero denominator");
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c /= &lead;
        }
        Ok(Self {
            num: ThetaLaurent::from_poly_parts(sn - sd, &n),
            den: ThetaLaurent::from_poly_parts(0, &d),
        })
    }

    pub fn from_laurent(num: ThetaLaurent) -> Self {
        Self {
            num,
            den: ThetaLaurent::one(),
        }
    }

    pub fn numerator(&self) -> &ThetaLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &ThetaLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&ThetaLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    /// Valuation at θ = 0.
    pub fn ord(&self) -> Option<i64> {
        self.num.ord()
    }

    /// Degree at θ = ∞ (deg num − deg den); minus the valuation there.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.deg()? - self.den.deg().unwrap_or(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn is_canonical(&self) -> bool {
        if !self.num.is_canonical() || !self.den.is_canonical() {
            return false;
        }
        let (sd, pd) = self.den.to_poly_parts();
        let monic = pd.last().is_some_and(|c| *c == super::rat_int(1));
        let (_, pn) = self.num.to_poly_parts();
        let coprime = self.num.is_zero() && self.den.is_one() || poly::gcd(&pn, &pd).len() == 1;
        sd == 0 && monic && coprime && !pd[0].is_zero()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_string_in(var)
        } else {
            format!("({})/({})", self.num.to_string_in(var), self.den.to_string_in(var))
        }
    }
}

impl From<ThetaLaurent> for LaurentFraction {
    fn from(v: ThetaLaurent) -> Self {
        Self::from_laurent(v)
    }
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn t(c: i64, k: i64) -> ThetaLaurent {
        ThetaLaurent::monomial(rat_int(c), k)
    }

    #[test]
    fn monomial_denominators_are_absorbed() {
        let f = LaurentFraction::new(ThetaLaurent::constant(rat(256, 27)), t(1, 4)).unwrap();
        assert_eq!(f.as_laurent().unwrap(), &ThetaLaurent::monomial(rat(256, 27), -4));
        assert!(f.is_canonical());
    }

    #[test]
    fn common_factor_cancels() {
        // (θ² − 1)/(2θ + 2) = (θ − 1)/2
        let num = &t(1, 2) - &t(1, 0);
        let den = &t(2, 1) + &t(2, 0);
        let f = LaurentFraction::new(num, den).unwrap();
        let expected = ThetaLaurent::from_terms([(1, rat(1, 2)), (0, rat(-1, 2))]);
        assert_eq!(f.as_laurent().unwrap(), &expected);
    }

    #[test]
    fn genuine_fraction_is_normalized() {
        // θ / (3θ² + 3)  ->  (1/3 θ) / (θ² + 1)
        let f = LaurentFraction::new(t(1, 1), &t(3, 2) + &t(3, 0)).unwrap();
        assert!(f.as_laurent().is_none());
        assert_eq!(f.denominator(), &(&t(1, 2) + &t(1, 0)));
        assert_eq!(f.numerator(), &ThetaLaurent::monomial(rat(1, 3), 1));
        assert!(f.is_canonical());
        assert_eq!(f.ord(), Some(1));
        assert_eq!(f.degree(), Some(-1));
        let back = f.mul(&LaurentFraction::from(&t(3, 2) + &t(3, 0)));
        assert_eq!(back.as_laurent().unwrap(), &t(1, 1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            LaurentFraction::new(t(1, 0), ThetaLaurent::zero()),
            Err(ExactError::DivisionByZero)
        );
    }
}

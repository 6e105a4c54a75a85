use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::GeometryError;
use crate::exact::{format_rational, rational_to_f64, Rational};

/// Laurent polynomial in x with rational coefficients, e.g. x + x⁻³.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert_with(Rational::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    /// xᵃ + x⁻ᵇ, the mirror of ℙ(a, b).
    pub fn mirror(a: u32, b: u32) -> Self {
        Self::from_terms([(a as i64, Rational::one()), (-(b as i64), Rational::one())])
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// a = max(0, highest exponent).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0).max(0) as u32
    }

    /// b = max(0, −lowest exponent).
    pub fn pole_order(&self) -> u32 {
        (-self.coeffs.keys().next().copied().unwrap_or(0)).max(0) as u32
    }

    /// Number of sheets a + b of the covering x ↦ f(x) of 𝔾ₘ.
    pub fn covering_degree(&self) -> usize {
        (self.degree() + self.pole_order()) as usize
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    pub fn numeric(&self) -> NumericLaurent {
        NumericLaurent {
            terms: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k as i32, rational_to_f64(c)))
                .collect(),
        }
    }

    /// Coefficients (ascending) of the polynomial xᵇ·(f(x) − t).
    pub fn cleared(&self, t: Complex64) -> Vec<Complex64> {
        let b = self.pole_order() as i64;
        let len = (self.degree() as i64 + b + 1) as usize;
        let mut out = vec![Complex64::zero(); len];
        for (&k, c) in &self.coeffs {
            out[(k + b) as usize] += Complex64::new(rational_to_f64(c), 0.0);
        }
        out[b as usize] -= t;
        out
    }

    /// Coefficients (ascending) of x^{b+1}·f′(x), with factors of x removed
    /// so that x = 0 is never reported as a critical point.
    pub fn critical_numerator(&self) -> Vec<Complex64> {
        let b = self.pole_order() as i64;
        let len = (self.degree() as i64 + b + 1) as usize;
        let mut out = vec![Complex64::zero(); len];
        for (&k, c) in &self.coeffs {
            out[(k + b) as usize] += Complex64::new(rational_to_f64(c) * k as f64, 0.0);
        }
        let lead_zeros = out.iter().take_while(|c| c.is_zero()).count();
        out.drain(..lead_zeros.min(out.len()));
        out
    }

    /// Parses a signed sum of terms `c*x^k`, e.g. `"x + x^-3"` or `"2/3*x^2 - x^-1"`.
    pub fn parse(text: &str) -> Result<Self, GeometryError> {
        Parser::new(text).parse()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if k == 0 {
                f.write_str(&format_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            if k == 1 {
                f.write_str("x")?;
            } else {
                write!(f, "x^{k}")?;
            }
        }
        Ok(())
    }
}

/// Floating-point copy of a [`LaurentPoly`] for evaluation in hot loops.
#[derive(Clone, Debug)]
pub struct NumericLaurent {
    terms: Vec<(i32, f64)>,
}

impl NumericLaurent {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.terms.iter().map(|&(k, c)| x.powi(k) * c).sum()
    }

    pub fn derivative(&self, x: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|&&(k, _)| k != 0)
            .map(|&(k, c)| x.powi(k - 1) * (c * k as f64))
            .sum()
    }

    /// f(x) and f′(x) together.
    pub fn eval_with_derivative(&self, x: Complex64) -> (Complex64, Complex64) {
        (self.eval(x), self.derivative(x))
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> GeometryError {
        GeometryError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, GeometryError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn signed_exponent(&mut self) -> Result<i64, GeometryError> {
        let parens = self.eat(b'(');
        let mut sign = 1i64;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        let at = self.pos;
        let value: i64 = self.integer()?.try_into().map_err(|_| GeometryError::Parse {
            position: at,
            message: "exponent out of range".into(),
        })?;
        if parens && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(sign * value)
    }

    fn term(&mut self) -> Result<(i64, Rational), GeometryError> {
        let mut coeff = Rational::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let n = self.integer()?;
            let d = if self.eat(b'/') {
                let at = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(GeometryError::Parse {
                        position: at,
                        message: "zero denominator".into(),
                    });
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(n, d);
            has_coeff = true;
            self.eat(b'*');
        }
        if self.eat(b'x') {
            let exp = if self.eat(b'^') { self.signed_exponent()? } else { 1 };
            Ok((exp, coeff))
        } else if has_coeff {
            Ok((0, coeff))
        } else {
            Err(self.error("expected a coefficient or 'x'"))
        }
    }

    fn parse(mut self) -> Result<LaurentPoly, GeometryError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return Err(self.error("empty expression")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            };
            let (k, c) = self.term()?;
            terms.push((k, if negative { -c } else { c }));
            first = false;
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

// Dense univariate polynomials over the rationals, coefficients in ascending
// order with no trailing zeros. Used for exact division and gcds of Laurent
// polynomials after the monomial content is factored out.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) type Poly = Vec<Rational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Polynomial long division; `d` must be nonzero.
pub(crate) fn div_rem(n: &Poly, d: &Poly) -> (Poly, Poly) {
    let dd = degree(d).expect("division by zero polynomial");
    let lead = &d[dd];
    let mut rem = n.clone();
    trim(&mut rem);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while let Some(rd) = degree(&rem) {
        if rd < dd {
            break;
        }
        let c = &rem[rd] / lead;
        let shift = rd - dd;
        for (i, dc) in d.iter().enumerate() {
            rem[shift + i] -= &c * dc;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic gcd; gcd(0, 0) is the empty (zero) polynomial.
pub(crate) fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

pub(crate) fn make_monic(p: &mut Poly) {
    if let Some(lead) = p.last().cloned() {
        if !lead.is_one() {
            for c in p.iter_mut() {
                *c /= &lead;
            }
        }
    }
}

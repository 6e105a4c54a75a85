use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GmError;
use crate::exact::{rat_int, Rational, ThetaLaurent};
use crate::geometry::LaurentPoly;

/// Order in which non-basis classes are rewritten. Top rewrites never create
/// bottom work and vice versa, so the freedom is how the two are interleaved;
/// `Seeded` picks the side at random at every step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    TopFirst,
    BottomFirst,
    Seeded(u64),
}

/// Rewrites classes [xᵐ dx] in ℚ[x, x⁻¹]dx[θ, θ⁻¹]/(θd − df∧) into the basis
/// x⁻¹dx, …, x^{−(a+b)}dx using θ·k·x^{k−1}dx ≡ f′(x)·xᵏdx.
#[derive(Clone, Debug, PartialEq)]
pub struct Reducer {
    coeffs: BTreeMap<i64, Rational>,
    a: i64,
    b: i64,
}

impl Reducer {
    pub fn new(f: &LaurentPoly) -> Result<Self, GmError> {
        let coeffs: BTreeMap<i64, Rational> = f.coeffs().iter().filter(|(_, c)| !c.is_zero()).map(|(&k, c)| (k, c.clone())).collect();
        let top = coeffs.keys().next_back().copied().unwrap_or(0);
        let bottom = coeffs.keys().next().copied().unwrap_or(0);
        if top < 1 || bottom > -1 {
            return Err(GmError::UnsupportedPolynomial(f.to_string()));
        }
        Ok(Self {
            coeffs,
            a: top,
            b: -bottom,
        })
    }

    pub fn rank(&self) -> usize {
        (self.a + self.b) as usize
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_basis(&self, m: i64) -> bool {
        (-(self.a + self.b)..=-1).contains(&m)
    }

    /// One rewrite of c·[xᵐ dx] into lower (m ≥ 0) or higher (m < −(a+b)) exponents.
    fn rewrite(&self, m: i64, c: &ThetaLaurent, work: &mut BTreeMap<i64, ThetaLaurent>) -> Result<(), GmError> {
        // xᵐ·lead ≡ θ·k·x^{m+shift} − Σ_{j≠pivot} j·c_j·x^{j+m+shift}
        let (pivot, k, shift) = if m >= 0 {
            (self.a, m - self.a + 1, -self.a)
        } else {
            (-self.b, m + self.b + 1, self.b)
        };
        let lead = rat_int(pivot) * self.coeffs.get(&pivot).cloned().unwrap_or_default();
        if lead.is_zero() {
            return Err(GmError::ReductionFailure { exponent: m });
        }
        let scale = c.scale(&(Rational::from_integer(1.into()) / &lead));
        if k != 0 {
            *work.entry(m + shift).or_insert_with(ThetaLaurent::zero) += &scale.scale(&rat_int(k)).shift(1);
        }
        for (&j, cj) in &self.coeffs {
            if j == pivot || j == 0 {
                continue;
            }
            let term = scale.scale(&-(rat_int(j) * cj));
            *work.entry(j + m + shift).or_insert_with(ThetaLaurent::zero) += &term;
        }
        Ok(())
    }

    /// Basis coordinates of Σ c_m [xᵐ dx]; entry i is the coefficient of x^{−(i+1)}dx.
    pub fn reduce(&self, class: &BTreeMap<i64, ThetaLaurent>, order: ReductionOrder) -> Result<Vec<ThetaLaurent>, GmError> {
        let mut work: BTreeMap<i64, ThetaLaurent> = class.iter().filter(|(_, c)| !c.is_zero()).map(|(&m, c)| (m, c.clone())).collect();
        let span = work.keys().map(|m| m.abs()).max().unwrap_or(0) + self.a + self.b;
        let cap = (self.a + self.b) * span;
        let mut rng = match order {
            ReductionOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut steps = 0;
        loop {
            work.retain(|_, c| !c.is_zero());
            let pending: Vec<i64> = work.keys().copied().filter(|&m| !self.is_basis(m)).collect();
            let bottom_first = match &mut rng {
                Some(r) => r.gen_bool(0.5),
                None => order == ReductionOrder::BottomFirst,
            };
            // each side from its outer end, so that no exponent is revisited
            let top = pending.last().copied().filter(|&m| m >= 0);
            let bottom = pending.first().copied().filter(|&m| m < 0);
            let Some(m) = (if bottom_first { bottom.or(top) } else { top.or(bottom) }) else {
                break;
            };
            steps += 1;
            if steps > cap {
                return Err(GmError::ReductionFailure { exponent: m });
            }
            let c = work.remove(&m).expect("pending exponent");
            self.rewrite(m, &c, &mut work)?;
        }
        let n = self.rank();
        let mut out = vec![ThetaLaurent::zero(); n];
        for (m, c) in work {
            out[(-m - 1) as usize] = c;
        }
        Ok(out)
    }

    /// The class f·xᵐ dx.
    pub fn f_times(&self, m: i64) -> BTreeMap<i64, ThetaLaurent> {
        self.coeffs.iter().map(|(&j, c)| (j + m, ThetaLaurent::constant(c.clone()))).collect()
    }
}

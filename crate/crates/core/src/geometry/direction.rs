use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::exact::{rat, Rational};

/// An angle stored exactly as a rational multiple of π.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiPhase(pub Rational);

impl PiPhase {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self(rat(numer, denom))
    }

    pub fn radians(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN) * PI
    }

    pub fn unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.radians())
    }

    pub fn add(&self, other: &PiPhase) -> PiPhase {
        PiPhase(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &PiPhase) -> PiPhase {
        PiPhase(&self.0 - &other.0)
    }

    /// Recognizes radians that are a multiple pπ/q with q ≤ `max_denom`.
    pub fn recognize(radians: f64, max_denom: i64) -> Option<PiPhase> {
        let x = radians / PI;
        (1..=max_denom).find_map(|q| {
            let p = (x * q as f64).round();
            ((x * q as f64 - p).abs() < 1e-9 * q as f64).then(|| PiPhase::new(p as i64, q))
        })
    }
}

impl fmt::Display for PiPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.0;
        if r.is_zero() {
            return f.write_str("0");
        }
        let sign = if r.is_negative() { "-" } else { "" };
        let n = r.numer().abs();
        let d = r.denom();
        let head = if n.is_one() { "pi".to_string() } else { format!("{n}pi") };
        if d.is_one() {
            write!(f, "{sign}{head}")
        } else {
            write!(f, "{sign}{head}/{d}")
        }
    }
}

impl FromStr for PiPhase {
    type Err = GeometryError;

    /// Accepts `0`, `pi`, `-pi/4`, `3pi/8`, `3*pi/8`, `3/8*pi` and `3/8` (units of π).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::BadPhase(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (neg, body) = match compact.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, compact.strip_prefix('+').unwrap_or(&compact)),
        };
        let int = |t: &str| -> Result<BigInt, GeometryError> {
            if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let value = if let Some(pos) = body.find("pi") {
            let before = body[..pos].trim_end_matches('*');
            let after = &body[pos + 2..];
            let scale = if before.is_empty() {
                Rational::one()
            } else if let Some((n, d)) = before.split_once('/') {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                Rational::new(int(n)?, d)
            } else {
                Rational::from_integer(int(before)?)
            };
            let div = match after.strip_prefix('/') {
                Some(d) => int(d)?,
                None if after.is_empty() => BigInt::one(),
                None => return Err(bad()),
            };
            if div.is_zero() {
                return Err(bad());
            }
            scale / Rational::from_integer(div)
        } else {
            crate::exact::parse_rational(body).map_err(|_| bad())?
        };
        Ok(PiPhase(if neg { -value } else { value }))
    }
}

impl Serialize for PiPhase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PiPhase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Closed interval of phases, in units of π.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseInterval {
    pub from: PiPhase,
    pub to: PiPhase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inadmissibility {
    /// The half-line from `from` in direction α passes through `through`.
    CollinearHalfLine { from: usize, through: usize },
    /// Re(σ·β) coincides for two critical values.
    TiedProjection { first: usize, second: usize },
}

impl fmt::Display for Inadmissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CollinearHalfLine { from, through } => write!(
                f,
                "half-line from critical value #{from} in direction alpha contains critical value #{through}"
            ),
            Self::TiedProjection { first, second } => write!(
                f,
                "critical values #{first} and #{second} have the same projection Re(sigma*beta)"
            ),
        }
    }
}

/// Direction data: α, β = i/α, the induced order on Σ, Stokes rays and the
/// two closed sectors at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionFrame {
    pub alpha_phase: PiPhase,
    pub beta_phase: PiPhase,
    pub alpha: Complex64,
    pub beta: Complex64,
    /// `order[k]` is the index into the input Σ of the k-th value in <_β order.
    pub order: Vec<usize>,
    /// Σ listed in <_β order.
    pub ordered_values: Vec<Complex64>,
    /// Phases arg(σᵢ − σⱼ) in (−π, π], ascending, deduplicated.
    pub stokes_rays: Vec<f64>,
    pub sector_alpha: PhaseInterval,
    pub sector_minus_alpha: PhaseInterval,
}

impl DirectionFrame {
    /// Maps the α-direction to the positive real axis.
    pub fn rotate(&self, z: Complex64) -> Complex64 {
        z / self.alpha
    }

    pub fn unrotate(&self, w: Complex64) -> Complex64 {
        w * self.alpha
    }
}

pub(crate) fn order_by_projection(values: &[Complex64], beta: Complex64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| (values[i] * beta).re.total_cmp(&(values[j] * beta).re));
    idx
}

fn normalize_phase(mut x: f64) -> f64 {
    while x <= -PI + 1e-12 {
        x += 2.0 * PI;
    }
    while x > PI + 1e-12 {
        x -= 2.0 * PI;
    }
    if x <= -PI + 1e-9 {
        PI
    } else {
        x
    }
}

/// Builds the direction frame for Σ and α = e^{iπ·alpha_phase}, checking admissibility.
pub fn direction_report(sigma: &[Complex64], alpha_phase: &PiPhase) -> Result<DirectionFrame, GeometryError> {
    if sigma.is_empty() {
        return Err(GeometryError::EmptySigma);
    }
    let scale = sigma.iter().map(|s| s.norm()).fold(1.0_f64, f64::max);
    let tol = 1e-8 * scale;
    for (i, a) in sigma.iter().enumerate() {
        for b in &sigma[i + 1..] {
            if (a - b).norm() < tol {
                return Err(GeometryError::RepeatedCriticalValue);
            }
        }
    }

    let half = PiPhase::new(1, 2);
    let beta_phase = half.sub(alpha_phase);
    let alpha = alpha_phase.unit();
    let beta = beta_phase.unit();

    for (i, si) in sigma.iter().enumerate() {
        for (j, sj) in sigma.iter().enumerate() {
            if i == j {
                continue;
            }
            let w = (sj - si) / alpha;
            if w.re > 0.0 && w.im.abs() < tol {
                return Err(GeometryError::InadmissibleDirection(Inadmissibility::CollinearHalfLine {
                    from: i,
                    through: j,
                }));
            }
        }
    }
    for (i, si) in sigma.iter().enumerate() {
        for (j, sj) in sigma.iter().enumerate().skip(i + 1) {
            if ((si * beta).re - (sj * beta).re).abs() < tol {
                return Err(GeometryError::InadmissibleDirection(Inadmissibility::TiedProjection {
                    first: i,
                    second: j,
                }));
            }
        }
    }

    let order = order_by_projection(sigma, beta);
    let ordered_values = order.iter().map(|&i| sigma[i]).collect();

    let mut rays: Vec<f64> = Vec::new();
    for (i, si) in sigma.iter().enumerate() {
        for (j, sj) in sigma.iter().enumerate() {
            if i != j {
                let phase = normalize_phase((si - sj).arg());
                if !rays.iter().any(|r| (r - phase).abs() < 1e-9) {
                    rays.push(phase);
                }
            }
        }
    }
    rays.sort_by(f64::total_cmp);

    let one = PiPhase::new(1, 1);
    Ok(DirectionFrame {
        alpha_phase: alpha_phase.clone(),
        sector_alpha: PhaseInterval {
            from: beta_phase.sub(&one),
            to: beta_phase.clone(),
        },
        sector_minus_alpha: PhaseInterval {
            from: beta_phase.clone(),
            to: beta_phase.add(&one),
        },
        beta_phase,
        alpha,
        beta,
        order,
        ordered_values,
        stokes_rays: rays,
    })
}

/// Renders a phase as `p pi/q` when recognizable, otherwise as decimal radians.
pub fn describe_phase(radians: f64) -> String {
    match PiPhase::recognize(radians, 64) {
        Some(p) => p.to_string(),
        None => format!("{radians:.12}"),
    }
}

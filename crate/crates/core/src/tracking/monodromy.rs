use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::lift::{match_to_fiber, StepLog, Tracker};
use super::path::{full_circle, PathPlan, PathPurpose, Segment};
use super::perm::Permutation;
use super::{TrackConfig, TrackingError};
use crate::geometry::{fiber, CriticalData, DirectionFrame, Fiber, LaurentPoly};
use crate::intmat::IntMatrix;

const MAX_NUDGES: usize = 100;

/// The base point e and its fiber in canonical order e₁, …, e_n.
#[derive(Clone, Debug, PartialEq)]
pub struct SheetLabeling {
    pub base: Complex64,
    pub sheets: Fiber,
    pub nudges: usize,
    /// Loop radius εᵢ for each critical value, indexed like Σ.
    pub radii: Vec<f64>,
}

impl SheetLabeling {
    pub fn len(&self) -> usize {
        self.sheets.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sheets.points.is_empty()
    }
}

fn scale(sigma: &[Complex64]) -> f64 {
    let m = sigma.iter().map(|s| s.norm()).fold(0.0, f64::max);
    if m > 0.0 {
        m
    } else {
        1.0
    }
}

/// εᵢ: a quarter of the distance from σ̂ᵢ to the other σ̂ⱼ and to their cuts
/// σ̂ⱼ − ℝ≥0 in the frame rotated by α⁻¹.
fn loop_radii(sigma: &[Complex64], frame: &DirectionFrame) -> Vec<f64> {
    let rotated: Vec<Complex64> = sigma.iter().map(|&s| frame.rotate(s)).collect();
    rotated
        .iter()
        .enumerate()
        .map(|(i, si)| {
            let d = rotated
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, sj)| {
                    if sj.re >= si.re {
                        (sj.im - si.im).abs()
                    } else {
                        (sj - si).norm()
                    }
                })
                .fold(f64::INFINITY, f64::min);
            if d.is_finite() {
                d / 4.0
            } else {
                scale(sigma) / 4.0
            }
        })
        .collect()
}

/// Base point e = 2·max|σ| on the positive real axis, nudged upward until
/// no cut passes within ε/2 of the approach level and the sheets over e are
/// well separated.
pub fn canonical_labels(
    f: &LaurentPoly,
    sigma: &[Complex64],
    frame: &DirectionFrame,
    cfg: &TrackConfig,
) -> Result<SheetLabeling, TrackingError> {
    let m = scale(sigma);
    let radii = loop_radii(sigma, frame);
    let eps = radii.iter().copied().fold(f64::INFINITY, f64::min).min(m);
    for nudges in 0..=MAX_NUDGES {
        let e = Complex64::new(2.0 * m, 0.01 * m * nudges as f64);
        let level = frame.rotate(e).im;
        if sigma.iter().any(|&s| (frame.rotate(s).im - level).abs() <= eps / 2.0) {
            continue;
        }
        let sheets = fiber(f, e, &cfg.roots)?;
        if sheets.points.iter().any(|p| p.multiplicity != 1) || sheets.min_separation() <= 10.0 * cfg.cluster_radius {
            continue;
        }
        return Ok(SheetLabeling {
            base: e,
            sheets,
            nudges,
            radii,
        });
    }
    Err(TrackingError::DegenerateBasePoint { attempts: MAX_NUDGES })
}

fn unrotate_segment(seg: Segment, frame: &DirectionFrame) -> Segment {
    match seg {
        Segment::Line { from, to } => Segment::Line {
            from: frame.unrotate(from),
            to: frame.unrotate(to),
        },
        Segment::Arc { center, radius, start, sweep } => Segment::Arc {
            center: frame.unrotate(center),
            radius: radius * frame.alpha.norm(),
            start: start + frame.alpha.arg(),
            sweep,
        },
    }
}

/// From e to σᵢ + εᵢα: right of every σ, then over to the level of σᵢ, then
/// in along ℓ_σᵢ. Stays clear of the cuts σⱼ − αℝ≥0.
fn approach_plan(i: usize, sigma: &[Complex64], labeling: &SheetLabeling, frame: &DirectionFrame) -> PathPlan {
    let eps = labeling.radii[i];
    let e = frame.rotate(labeling.base);
    let s = frame.rotate(sigma[i]);
    let right = sigma.iter().map(|&z| frame.rotate(z).re).fold(e.re, f64::max) + 0.5 * scale(sigma);
    let corner1 = Complex64::new(right, e.im);
    let corner2 = Complex64::new(right, s.im);
    let segments = [
        Segment::Line { from: e, to: corner1 },
        Segment::Line { from: corner1, to: corner2 },
        Segment::Line { from: corner2, to: s + eps },
    ]
    .into_iter()
    .map(|seg| unrotate_segment(seg, frame))
    .collect();
    PathPlan::new(segments, PathPurpose::HalfLine(i)).with_max_step(eps / 8.0)
}

/// The loop γ_σᵢ: approach, one counterclockwise turn of radius εᵢ, return.
pub fn loop_plan(i: usize, sigma: &[Complex64], labeling: &SheetLabeling, frame: &DirectionFrame) -> PathPlan {
    let eps = labeling.radii[i];
    let approach = approach_plan(i, sigma, labeling, frame);
    let circle = PathPlan::new(
        vec![unrotate_segment(full_circle(frame.rotate(sigma[i]), eps, 0.0), frame)],
        PathPurpose::Loop(i),
    )
    .with_max_step(eps / 8.0);
    let back = approach.reversed();
    let mut plan = approach.then(&circle).then(&back);
    plan.purpose = PathPurpose::Loop(i);
    plan
}

/// The approach to ℓ_σᵢ followed by the inward run along ℓ_σᵢ to distance
/// `stop` from σᵢ.
pub fn halfline_plan(i: usize, sigma: &[Complex64], labeling: &SheetLabeling, frame: &DirectionFrame, stop: f64) -> PathPlan {
    let eps = labeling.radii[i];
    let approach = approach_plan(i, sigma, labeling, frame);
    let inward = PathPlan::new(
        vec![Segment::Line {
            from: sigma[i] + frame.alpha * eps,
            to: sigma[i] + frame.alpha * stop,
        }],
        PathPurpose::HalfLine(i),
    )
    .with_max_step(eps / 8.0);
    approach.then(&inward)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopLift {
    pub index: usize,
    pub plan: PathPlan,
    pub permutation: Permutation,
    pub stats: StepLog,
    pub curves: Option<Vec<Vec<Complex64>>>,
}

impl LoopLift {
    pub fn matrix(&self) -> IntMatrix {
        self.permutation.to_matrix()
    }
}

/// Monodromy permutation of the sheets along γ_σᵢ.
pub fn loop_monodromy(
    f: &LaurentPoly,
    i: usize,
    sigma: &[Complex64],
    labeling: &SheetLabeling,
    frame: &DirectionFrame,
    cfg: &TrackConfig,
) -> Result<LoopLift, TrackingError> {
    if i >= sigma.len() {
        return Err(TrackingError::NoSuchValue(i));
    }
    let plan = loop_plan(i, sigma, labeling, frame);
    let numeric = f.numeric();
    let mut tracker = Tracker::new(&numeric, cfg, plan.start(), labeling.sheets.positions());
    tracker.follow(&plan)?;
    let images = match_to_fiber(&tracker.points, &labeling.sheets, 10.0 * cfg.cluster_radius)?;
    let permutation = Permutation::from_images(images).ok_or(TrackingError::EndpointMismatch { distance: 0.0 })?;
    Ok(LoopLift {
        index: i,
        plan,
        permutation,
        stats: tracker.log,
        curves: tracker.curves,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HalfLineLift {
    pub index: usize,
    pub plan: PathPlan,
    /// Row j has its single 1 in the column of the critical fiber point where
    /// the lift of ℓ_σᵢ carrying sheet j starts.
    pub b: IntMatrix,
    /// Extrapolated limit of each sheet at σᵢ.
    pub limits: Vec<Complex64>,
    pub stats: StepLog,
    pub curves: Option<Vec<Vec<Complex64>>>,
}

/// Value at u = 0 of the polynomial through (uₖ, xₖ) (Neville).
fn extrapolate_to_zero(u: &[f64], x: &[Complex64]) -> Complex64 {
    let mut p = x.to_vec();
    let n = u.len();
    for level in 1..n {
        for k in 0..n - level {
            p[k] = (p[k + 1] * u[k] - p[k] * u[k + level]) / (u[k] - u[k + level]);
        }
    }
    p[0]
}

/// Boundary map b_σᵢ: which critical fiber point each lift of ℓ_σᵢ reaches.
pub fn halfline_boundary(
    f: &LaurentPoly,
    i: usize,
    crit: &CriticalData,
    labeling: &SheetLabeling,
    frame: &DirectionFrame,
    cfg: &TrackConfig,
) -> Result<HalfLineLift, TrackingError> {
    let sigma = crit.sigma();
    if i >= sigma.len() {
        return Err(TrackingError::NoSuchValue(i));
    }
    let s0 = cfg.halfline_stop;
    let ks = [64.0, 16.0, 4.0, 1.0];
    let plan = halfline_plan(i, &sigma, labeling, frame, ks[0] * s0);
    let numeric = f.numeric();
    let mut tracker = Tracker::new(&numeric, cfg, plan.start(), labeling.sheets.positions());
    tracker.follow(&plan)?;
    let mut samples = vec![tracker.points.clone()];
    for &k in &ks[1..] {
        tracker.advance_to(sigma[i] + frame.alpha * (k * s0))?;
        samples.push(tracker.points.clone());
    }
    let u: Vec<f64> = ks.iter().map(|k| (k * s0).sqrt()).collect();
    let limits: Vec<Complex64> = (0..labeling.len())
        .map(|j| {
            let x: Vec<Complex64> = samples.iter().map(|pts| pts[j]).collect();
            extrapolate_to_zero(&u, &x)
        })
        .collect();
    let critical_fiber = &crit.values[i].fiber;
    let columns = match_to_fiber(&limits, critical_fiber, cfg.cluster_radius).map_err(|e| match e {
        TrackingError::EndpointMismatch { distance } => TrackingError::AmbiguousLimit { distance },
        other => other,
    })?;
    let mut b = IntMatrix::zeros(labeling.len(), critical_fiber.points.len());
    for (j, &col) in columns.iter().enumerate() {
        b.set(j, col, 1);
    }
    Ok(HalfLineLift {
        index: i,
        plan,
        b,
        limits,
        stats: tracker.log,
        curves: tracker.curves,
    })
}

/// Radial segment from e out to the circle of radius R = max(|e − m|, 2·max|σ − m|)
/// about the mean m of Σ, one counterclockwise turn, and back.
pub fn infinity_plan(sigma: &[Complex64], labeling: &SheetLabeling) -> PathPlan {
    let e = labeling.base;
    let center = if sigma.is_empty() {
        Complex64::new(0.0, 0.0)
    } else {
        sigma.iter().sum::<Complex64>() / sigma.len() as f64
    };
    let spread = sigma.iter().map(|s| (s - center).norm()).fold(0.0, f64::max);
    let radius = (e - center).norm().max(2.0 * spread);
    let dir = (e - center) / (e - center).norm();
    let on_circle = center + dir * radius;
    let out = PathPlan::new(vec![Segment::Line { from: e, to: on_circle }], PathPurpose::BigCircle);
    let circle = PathPlan::new(vec![full_circle(center, radius, dir.arg())], PathPurpose::BigCircle);
    let back = out.reversed();
    let mut plan = out.then(&circle).then(&back);
    plan.max_step = radius * TAU / 256.0;
    plan
}

/// Monodromy of the sheets around all of Σ.
pub fn infinity_monodromy(
    f: &LaurentPoly,
    sigma: &[Complex64],
    labeling: &SheetLabeling,
    cfg: &TrackConfig,
) -> Result<Permutation, TrackingError> {
    let plan = infinity_plan(sigma, labeling);
    let numeric = f.numeric();
    let mut tracker = Tracker::new(&numeric, cfg, plan.start(), labeling.sheets.positions());
    tracker.follow(&plan)?;
    let images = match_to_fiber(&tracker.points, &labeling.sheets, 10.0 * cfg.cluster_radius)?;
    Permutation::from_images(images).ok_or(TrackingError::EndpointMismatch { distance: 0.0 })
}

/// Everything the quiver needs, with loops and half-lines in <_β order.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyData {
    pub labeling: SheetLabeling,
    pub loops: Vec<LoopLift>,
    pub halflines: Vec<HalfLineLift>,
    pub infinity: Permutation,
}

pub fn monodromy_data(
    f: &LaurentPoly,
    crit: &CriticalData,
    frame: &DirectionFrame,
    cfg: &TrackConfig,
) -> Result<MonodromyData, TrackingError> {
    let sigma = crit.sigma();
    let labeling = canonical_labels(f, &sigma, frame, cfg)?;
    let per_value: Vec<(LoopLift, HalfLineLift)> = frame
        .order
        .par_iter()
        .map(|&i| {
            let lp = loop_monodromy(f, i, &sigma, &labeling, frame, cfg)?;
            let hl = halfline_boundary(f, i, crit, &labeling, frame, cfg)?;
            Ok((lp, hl))
        })
        .collect::<Result<_, TrackingError>>()?;
    let infinity = infinity_monodromy(f, &sigma, &labeling, cfg)?;
    let (loops, halflines) = per_value.into_iter().unzip();
    Ok(MonodromyData {
        labeling,
        loops,
        halflines,
        infinity,
    })
}

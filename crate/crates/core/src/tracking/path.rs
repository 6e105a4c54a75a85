use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A piece of a path in the base ℂ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    /// Arc of `sweep` radians (positive = counterclockwise) starting at angle `start`.
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl Segment {
    pub fn point(&self, s: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc { center, radius, start, sweep } => center + Complex64::from_polar(radius, start + sweep * s),
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            Segment::Line { to, .. } => to,
            _ => self.point(1.0),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, radius, start, sweep } => Segment::Arc {
                center,
                radius,
                start: start + sweep,
                sweep: -sweep,
            },
        }
    }

    /// Points at spacing at most `h`, including both endpoints.
    fn sample(&self, h: f64) -> Vec<Complex64> {
        let n = ((self.length() / h).ceil() as usize).max(1);
        let mut pts: Vec<Complex64> = (0..n).map(|k| self.point(k as f64 / n as f64)).collect();
        pts.push(self.end());
        pts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum PathPurpose {
    Loop(usize),
    HalfLine(usize),
    BigCircle,
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPlan {
    pub segments: Vec<Segment>,
    pub purpose: PathPurpose,
    /// Ceiling on the base step used when the plan is tracked.
    pub max_step: f64,
}

impl PathPlan {
    pub fn new(segments: Vec<Segment>, purpose: PathPurpose) -> Self {
        let mut plan = Self {
            segments,
            purpose,
            max_step: f64::INFINITY,
        };
        plan.max_step = (plan.length() / 64.0).max(f64::MIN_POSITIVE);
        plan
    }

    pub fn with_max_step(mut self, h: f64) -> Self {
        self.max_step = h;
        self
    }

    /// The zero-length path at `t`.
    pub fn constant(t: Complex64) -> Self {
        Self::new(vec![Segment::Line { from: t, to: t }], PathPurpose::Other)
    }

    pub fn start(&self) -> Complex64 {
        self.segments.first().map(Segment::start).unwrap_or_default()
    }

    pub fn end(&self) -> Complex64 {
        self.segments.last().map(Segment::end).unwrap_or_default()
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(Segment::length).sum()
    }

    pub fn is_connected(&self, tol: f64) -> bool {
        self.segments.windows(2).all(|w| (w[0].end() - w[1].start()).norm() <= tol)
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        (self.start() - self.end()).norm() <= tol
    }

    pub fn reversed(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            purpose: self.purpose,
            max_step: self.max_step,
        }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn then(mut self, other: &PathPlan) -> Self {
        self.segments.extend(other.segments.iter().copied());
        self.max_step = self.max_step.min(other.max_step);
        self
    }

    /// Polyline through the path with spacing at most `h`; no repeated joints.
    pub fn sample(&self, h: f64) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for seg in &self.segments {
            let pts = seg.sample(h);
            let skip = usize::from(!out.is_empty());
            out.extend(pts.into_iter().skip(skip));
        }
        out
    }

    /// Smallest distance from the sampled path to any point of `avoid`.
    pub fn clearance(&self, avoid: &[Complex64], h: f64) -> f64 {
        self.sample(h)
            .iter()
            .flat_map(|p| avoid.iter().map(move |q| (p - q).norm()))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Counterclockwise circle of the given radius starting and ending at angle `start`.
pub fn full_circle(center: Complex64, radius: f64, start: f64) -> Segment {
    Segment::Arc { center, radius, start, sweep: TAU }
}

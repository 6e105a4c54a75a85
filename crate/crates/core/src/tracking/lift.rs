use num_complex::Complex64;

use super::path::PathPlan;
use super::{TrackConfig, TrackingError};
use crate::geometry::{fiber, Fiber, LaurentPoly, NumericLaurent};

/// Result of continuing every point of a fiber along a path.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackedLift {
    pub start: Fiber,
    pub end: Fiber,
    /// Tracked position of sheet j at the end of the path.
    pub end_points: Vec<Complex64>,
    /// Sheet j ends at `end.points[correspondence[j]]`.
    pub correspondence: Vec<usize>,
    pub stats: StepLog,
    /// One polyline per sheet, when recording was requested.
    pub curves: Option<Vec<Vec<Complex64>>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepLog {
    pub steps: usize,
    pub max_step: f64,
    pub min_separation: f64,
}

impl Default for StepLog {
    fn default() -> Self {
        Self {
            steps: 0,
            max_step: 0.0,
            min_separation: f64::INFINITY,
        }
    }
}

impl StepLog {
    pub fn merge(&mut self, other: &StepLog) {
        self.steps += other.steps;
        self.max_step = self.max_step.max(other.max_step);
        self.min_separation = self.min_separation.min(other.min_separation);
    }
}

/// Continuation state of all sheets at once.
#[derive(Clone, Debug)]
pub struct Tracker<'a> {
    f: &'a NumericLaurent,
    cfg: &'a TrackConfig,
    pub t: Complex64,
    pub points: Vec<Complex64>,
    pub log: StepLog,
    pub curves: Option<Vec<Vec<Complex64>>>,
}

enum StepFailure {
    Corrector(Complex64),
    Jump,
    Collision(f64),
}

fn min_separation(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min((p - q).norm());
        }
    }
    best
}

impl<'a> Tracker<'a> {
    pub fn new(f: &'a NumericLaurent, cfg: &'a TrackConfig, t: Complex64, points: Vec<Complex64>) -> Self {
        let curves = cfg.record_curves.then(|| points.iter().map(|&p| vec![p]).collect());
        Self {
            f,
            cfg,
            t,
            points,
            log: StepLog::default(),
            curves,
        }
    }

    fn converged(&self, x: Complex64, t: Complex64) -> bool {
        (self.f.eval(x) - t).norm() <= self.cfg.track_tol * t.norm().max(1.0)
    }

    fn try_step(&self, tb: Complex64) -> Result<Vec<Complex64>, StepFailure> {
        let dt = tb - self.t;
        let mut next = Vec::with_capacity(self.points.len());
        for (j, &x0) in self.points.iter().enumerate() {
            let mut x = x0 + dt / self.f.derivative(x0);
            let mut ok = self.converged(x, tb);
            let mut iterations = 0;
            while !ok && iterations < self.cfg.max_corrector_iterations {
                let (fx, dfx) = self.f.eval_with_derivative(x);
                x -= (fx - tb) / dfx;
                iterations += 1;
                ok = x.is_finite() && self.converged(x, tb);
            }
            if !ok {
                return Err(StepFailure::Corrector(tb));
            }
            let nearest = self
                .points
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, p)| (p - x0).norm())
                .fold(f64::INFINITY, f64::min);
            if (x - x0).norm() >= 0.25 * nearest {
                return Err(StepFailure::Jump);
            }
            next.push(x);
        }
        let sep = min_separation(&next);
        if sep < self.cfg.separation_floor {
            return Err(StepFailure::Collision(sep));
        }
        Ok(next)
    }

    /// Continue all sheets along the straight base segment to `target`,
    /// halving the step on failure and growing it again on success.
    pub fn advance_to(&mut self, target: Complex64) -> Result<(), TrackingError> {
        let origin = self.t;
        let total = target - origin;
        if total.norm() == 0.0 {
            return Ok(());
        }
        let min_fraction = 1e-13 * origin.norm().max(1.0) / total.norm();
        let mut s = 0.0_f64;
        let mut ds = 1.0_f64;
        while s < 1.0 {
            ds = ds.min(1.0 - s);
            let end = if s + ds >= 1.0 { target } else { origin + total * (s + ds) };
            match self.try_step(end) {
                Ok(next) => {
                    self.log.steps += 1;
                    self.log.max_step = self.log.max_step.max((end - self.t).norm());
                    self.log.min_separation = self.log.min_separation.min(min_separation(&next));
                    self.points = next;
                    self.t = end;
                    s += ds;
                    ds *= 2.0;
                    if let Some(curves) = &mut self.curves {
                        for (c, &p) in curves.iter_mut().zip(&self.points) {
                            c.push(p);
                        }
                    }
                }
                Err(failure) => {
                    ds /= 2.0;
                    if ds < min_fraction {
                        return Err(match failure {
                            StepFailure::Corrector(t) => TrackingError::CorrectorDiverged { re: t.re, im: t.im },
                            StepFailure::Jump => TrackingError::SheetCollision {
                                re: self.t.re,
                                im: self.t.im,
                                separation: min_separation(&self.points),
                            },
                            StepFailure::Collision(sep) => TrackingError::SheetCollision {
                                re: end.re,
                                im: end.im,
                                separation: sep,
                            },
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Follow a whole plan, with base points spaced by its scaled step ceiling.
    pub fn follow(&mut self, plan: &PathPlan) -> Result<(), TrackingError> {
        let h = plan.max_step * self.cfg.step_scale;
        for t in plan.sample(h).into_iter().skip(1) {
            self.advance_to(t)?;
        }
        Ok(())
    }
}

/// Index into `fiber` of the point nearest to each of `points`.
pub(crate) fn match_to_fiber(points: &[Complex64], fiber: &Fiber, tol: f64) -> Result<Vec<usize>, TrackingError> {
    points
        .iter()
        .map(|&z| {
            let (idx, dist) = fiber.nearest(z).ok_or(TrackingError::EndpointMismatch { distance: f64::INFINITY })?;
            if dist > tol {
                Err(TrackingError::EndpointMismatch { distance: dist })
            } else {
                Ok(idx)
            }
        })
        .collect()
}

/// Continue every sheet of `start` along `plan`.
pub fn lift_path(f: &LaurentPoly, plan: &PathPlan, start: &Fiber, cfg: &TrackConfig) -> Result<TrackedLift, TrackingError> {
    if (start.base - plan.start()).norm() > 1e-12 * start.base.norm().max(1.0) {
        return Err(TrackingError::StartMismatch);
    }
    if start.points.iter().any(|p| p.multiplicity != 1) {
        return Err(TrackingError::StartMismatch);
    }
    let numeric = f.numeric();
    let mut tracker = Tracker::new(&numeric, cfg, plan.start(), start.positions());
    tracker.follow(plan)?;
    let end = fiber(f, plan.end(), &cfg.roots)?;
    let correspondence = match_to_fiber(&tracker.points, &end, 10.0 * cfg.cluster_radius)?;
    if end.points.iter().all(|p| p.multiplicity == 1) {
        let mut seen = vec![false; end.points.len()];
        for &k in &correspondence {
            if std::mem::replace(&mut seen[k], true) {
                return Err(TrackingError::EndpointMismatch { distance: 0.0 });
            }
        }
    }
    Ok(TrackedLift {
        start: start.clone(),
        end,
        end_points: tracker.points,
        correspondence,
        stats: tracker.log,
        curves: tracker.curves,
    })
}

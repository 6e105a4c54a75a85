//! Analytic continuation of fibers of f along paths in the base: loop
//! monodromies, limits along half-lines, and the canonical sheet labels.

mod lift;
mod monodromy;
mod path;
mod perm;

pub use lift::{lift_path, StepLog, TrackedLift, Tracker};
pub use monodromy::{
    canonical_labels, halfline_boundary, halfline_plan, infinity_monodromy, infinity_plan, loop_monodromy, loop_plan,
    monodromy_data, HalfLineLift, LoopLift, MonodromyData, SheetLabeling,
};
pub use path::{full_circle, PathPlan, PathPurpose, Segment};
pub use perm::{generates, is_transitive, Permutation};

use thiserror::Error;

use crate::geometry::{GeometryError, RootFinderConfig, CLUSTER_RADIUS};

#[derive(Clone, Debug, PartialEq)]
pub struct TrackConfig {
    /// Newton residual target |f(x) − t| relative to max(1, |t|).
    pub track_tol: f64,
    pub separation_floor: f64,
    pub cluster_radius: f64,
    pub max_corrector_iterations: usize,
    /// Multiplies every step ceiling; 0.5 halves them.
    pub step_scale: f64,
    /// Distance from σ at which the inward half-line track stops.
    pub halfline_stop: f64,
    pub record_curves: bool,
    pub roots: RootFinderConfig,
}

impl Default for TrackConfig {
    fn default() -> Self {
        Self {
            track_tol: 1e-10,
            separation_floor: 1e-7,
            cluster_radius: CLUSTER_RADIUS,
            max_corrector_iterations: 5,
            step_scale: 1.0,
            halfline_stop: 1e-5,
            record_curves: false,
            roots: RootFinderConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrackingError {
    #[error("two sheets came within {separation:e} of each other near t = {re}+{im}i")]
    SheetCollision { re: f64, im: f64, separation: f64 },
    #[error("Newton corrector failed to converge near t = {re}+{im}i")]
    CorrectorDiverged { re: f64, im: f64 },
    #[error("no generic base point found after {attempts} nudges")]
    DegenerateBasePoint { attempts: usize },
    #[error("half-line limit is {distance:e} away from every critical fiber point")]
    AmbiguousLimit { distance: f64 },
    #[error("tracked endpoint does not match the end fiber (distance {distance:e})")]
    EndpointMismatch { distance: f64 },
    #[error("start fiber does not lie over the start of the path or is not simple")]
    StartMismatch,
    #[error("critical value index {0} out of range")]
    NoSuchValue(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

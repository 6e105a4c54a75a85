//! Laurent polynomials in x, their critical data and fibers, and the
//! direction frame (α, β) that orders the critical values.

mod critical;
mod direction;
mod laurent_poly;
pub mod roots;

pub use critical::{
    canonical_cmp, critical_data, fiber, sort_canonical, CriticalData, CriticalValue, Fiber, FiberPoint,
};
pub use direction::{describe_phase, direction_report, DirectionFrame, Inadmissibility, PhaseInterval, PiPhase};
pub use laurent_poly::{LaurentPoly, NumericLaurent};
pub use roots::RootFinderConfig;

use thiserror::Error;

/// Roots closer than this are merged into one point with multiplicity.
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// Critical values closer than this are treated as one value.
pub const VALUE_DISTINCTNESS: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0x5eed_0f57_07e5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("cannot parse phase {0:?}; expected forms like \"pi/8\" or \"3pi/8\"")]
    BadPhase(String),
    #[error("root finder did not reach the residual target (worst residual {residual:e})")]
    RootFindingDiverged { residual: f64 },
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("f is constant")]
    ConstantFunction,
    #[error("degenerate critical point at {re}+{im}i (multiplicity {multiplicity} as a zero of f')")]
    DegenerateCriticalPoint { re: f64, im: f64, multiplicity: usize },
    #[error("fiber has total multiplicity {found}, expected {expected}")]
    FiberCount { expected: usize, found: usize },
    #[error("no critical values")]
    EmptySigma,
    #[error("critical values are not pairwise distinct")]
    RepeatedCriticalValue,
    #[error("inadmissible direction: {0}")]
    InadmissibleDirection(Inadmissibility),
}

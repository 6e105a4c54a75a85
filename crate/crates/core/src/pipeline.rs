//! The end-to-end Stokes computation and its JSON run manifest.

use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{critical_data, describe_phase, direction_report, CriticalData, DirectionFrame, LaurentPoly, PhaseInterval, PiPhase, RootFinderConfig};
use crate::intmat::IntMatrix;
use crate::stokes::{assemble_stokes, extract_quiver, Quiver, StokesPair};
use crate::tracking::{monodromy_data, MonodromyData, TrackConfig};

pub const SCHEMA: u32 = 1;
pub const SEED_ENV: &str = "MIRROR_STOKES_SEED";

/// Every numeric knob of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericSettings {
    pub track_tol: f64,
    pub separation_floor: f64,
    pub cluster_radius: f64,
    pub max_corrector_iterations: usize,
    pub step_scale: f64,
    pub halfline_stop: f64,
    pub root_tol: f64,
    pub root_max_iterations: usize,
    pub seed: u64,
}

impl Default for NumericSettings {
    fn default() -> Self {
        let t = TrackConfig::default();
        Self {
            track_tol: t.track_tol,
            separation_floor: t.separation_floor,
            cluster_radius: t.cluster_radius,
            max_corrector_iterations: t.max_corrector_iterations,
            step_scale: t.step_scale,
            halfline_stop: t.halfline_stop,
            root_tol: t.roots.tol,
            root_max_iterations: t.roots.max_iterations,
            seed: t.roots.seed,
        }
    }
}

impl NumericSettings {
    pub fn track_config(&self) -> TrackConfig {
        TrackConfig {
            track_tol: self.track_tol,
            separation_floor: self.separation_floor,
            cluster_radius: self.cluster_radius,
            max_corrector_iterations: self.max_corrector_iterations,
            step_scale: self.step_scale,
            halfline_stop: self.halfline_stop,
            record_curves: false,
            roots: self.root_config(),
        }
    }

    pub fn root_config(&self) -> RootFinderConfig {
        RootFinderConfig {
            max_iterations: self.root_max_iterations,
            tol: self.root_tol,
            seed: self.seed,
        }
    }

    /// Applies `MIRROR_STOKES_SEED` when it is set to an integer.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(text) = std::env::var(SEED_ENV) {
            self.seed = text
                .trim()
                .parse()
                .map_err(|_| crate::error::Error::Input(format!("{SEED_ENV}={text:?} is not an unsigned integer")))?;
        }
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInputs {
    pub f: String,
    pub alpha_phase: PiPhase,
    #[serde(default)]
    pub settings: NumericSettings,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPointRecord {
    pub z: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalValueRecord {
    pub value: Complex64,
    pub critical_points: Vec<Complex64>,
    /// Fiber over the value, with multiplicities.
    pub fiber: Vec<CriticalPointRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameRecord {
    pub alpha_phase: PiPhase,
    pub beta_phase: PiPhase,
    /// Indices into `critical_values`, in increasing Re(σβ).
    pub order: Vec<usize>,
    pub stokes_rays: Vec<String>,
    pub sector_alpha: PhaseInterval,
    pub sector_minus_alpha: PhaseInterval,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopRecord {
    pub value_index: usize,
    /// Sheet j is carried to sheet `images[j]`.
    pub images: Vec<usize>,
    pub t: IntMatrix,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfLineRecord {
    pub value_index: usize,
    pub b: IntMatrix,
    pub limits: Vec<Complex64>,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonodromyRecord {
    pub base_point: Complex64,
    pub nudges: usize,
    pub sheets: Vec<Complex64>,
    pub loop_radii: Vec<f64>,
    pub loops: Vec<LoopRecord>,
    pub halflines: Vec<HalfLineRecord>,
    pub infinity_images: Vec<usize>,
    pub infinity_cycle_type: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub critical_ms: f64,
    pub tracking_ms: f64,
    pub stokes_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub schema: u32,
    pub version: String,
    pub inputs: RunInputs,
    pub critical_values: Vec<CriticalValueRecord>,
    pub critical_points: Vec<CriticalPointRecord>,
    pub frame: FrameRecord,
    pub monodromy: MonodromyRecord,
    pub quiver: Quiver,
    pub stokes: StokesPair,
    pub sign_convention: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

const SIGN_CONVENTION: &str = "sheets are labelled by descending real part then descending imaginary part of the fiber over the base point; \
vanishing-cycle generators u_i = e_p - e_q with p < q; relabelling the sheets can conjugate the Stokes matrices by a diagonal sign matrix";

impl RunManifest {
    /// Deterministic JSON: the same inputs give the same bytes when timings are dropped.
    pub fn to_json(&self, with_timings: bool) -> Result<String> {
        let mut m = self.clone();
        if !with_timings {
            m.timings = None;
        }
        Ok(serde_json::to_string_pretty(&m)?)
    }
}

/// Intermediate results, for callers that want more than the manifest.
pub struct StokesRun {
    pub f: LaurentPoly,
    pub critical: CriticalData,
    pub frame: DirectionFrame,
    pub monodromy: MonodromyData,
    pub quiver: Quiver,
    pub stokes: StokesPair,
    pub manifest: RunManifest,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run_stokes_pipeline(inputs: &RunInputs) -> Result<StokesRun> {
    let start = Instant::now();
    let f = LaurentPoly::parse(&inputs.f)?;
    let cfg = inputs.settings.track_config();
    let critical = critical_data(&f, &cfg.roots)?;
    let frame = direction_report(&critical.sigma(), &inputs.alpha_phase)?;
    let critical_ms = ms(start);

    let t = Instant::now();
    let monodromy = monodromy_data(&f, &critical, &frame, &cfg)?;
    let tracking_ms = ms(t);

    let t = Instant::now();
    let ts: Vec<IntMatrix> = monodromy.loops.iter().map(|l| l.matrix()).collect();
    let bs: Vec<IntMatrix> = monodromy.halflines.iter().map(|h| h.b.clone()).collect();
    let quiver = extract_quiver(&ts, &bs)?;
    let stokes = assemble_stokes(&quiver, &frame)?;
    let stokes_ms = ms(t);

    let record = |z: Complex64, multiplicity: usize| CriticalPointRecord { z, multiplicity };
    let manifest = RunManifest {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs: inputs.clone(),
        critical_values: critical
            .values
            .iter()
            .map(|v| CriticalValueRecord {
                value: v.value,
                critical_points: v.critical_points.clone(),
                fiber: v.fiber.points.iter().map(|p| record(p.z, p.multiplicity)).collect(),
            })
            .collect(),
        critical_points: critical.critical_points.iter().map(|p| record(p.z, p.multiplicity)).collect(),
        frame: FrameRecord {
            alpha_phase: frame.alpha_phase.clone(),
            beta_phase: frame.beta_phase.clone(),
            order: frame.order.clone(),
            stokes_rays: frame.stokes_rays.iter().map(|&r| describe_phase(r)).collect(),
            sector_alpha: frame.sector_alpha.clone(),
            sector_minus_alpha: frame.sector_minus_alpha.clone(),
        },
        monodromy: MonodromyRecord {
            base_point: monodromy.labeling.base,
            nudges: monodromy.labeling.nudges,
            sheets: monodromy.labeling.sheets.positions(),
            loop_radii: monodromy.labeling.radii.clone(),
            loops: monodromy
                .loops
                .iter()
                .map(|l| LoopRecord {
                    value_index: l.index,
                    images: l.permutation.images().to_vec(),
                    t: l.matrix(),
                    steps: l.stats.steps,
                })
                .collect(),
            halflines: monodromy
                .halflines
                .iter()
                .map(|h| HalfLineRecord {
                    value_index: h.index,
                    b: h.b.clone(),
                    limits: h.limits.clone(),
                    steps: h.stats.steps,
                })
                .collect(),
            infinity_images: monodromy.infinity.images().to_vec(),
            infinity_cycle_type: monodromy.infinity.cycle_type(),
        },
        quiver: quiver.clone(),
        stokes: stokes.clone(),
        sign_convention: SIGN_CONVENTION.to_string(),
        timings: Some(Timings {
            critical_ms,
            tracking_ms,
            stokes_ms,
            total_ms: ms(start),
        }),
    };
    Ok(StokesRun {
        f,
        critical,
        frame,
        monodromy,
        quiver,
        stokes,
        manifest,
    })
}

/// Reads the `inputs` block of a previously written manifest.
pub fn read_manifest_inputs(path: &Path) -> Result<RunInputs> {
    #[derive(Deserialize)]
    struct Partial {
        inputs: RunInputs,
    }
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str::<Partial>(&text)?.inputs)
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    use std::io::Write;
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    fn inputs(f: &str, phase: &str) -> RunInputs {
        RunInputs {
            f: f.to_string(),
            alpha_phase: phase.parse().unwrap(),
            settings: NumericSettings::default(),
        }
    }

    #[test]
    fn p1_run() {
        let run = run_stokes_pipeline(&inputs("x + x^-1", "pi/8")).unwrap();
        assert_eq!(run.stokes.s_beta, IntMatrix::from_literal([[1, 2], [0, 1]]));
        let json = run.manifest.to_json(false).unwrap();
        assert!(json.contains("\"schema\": 1"));
        assert!(!json.contains("timings"));
        assert!(run.manifest.to_json(true).unwrap().contains("timings"));
    }

    #[test]
    fn error_families() {
        let kind = |f: &str, p: &str| run_stokes_pipeline(&inputs(f, p)).err().map(|e| e.kind());
        assert_eq!(kind("x", "pi/8"), Some(ErrorKind::Degeneracy));
        assert_eq!(kind("x + ", "pi/8"), Some(ErrorKind::Parse));
        // ±2 on the real axis; α = 1 puts 2 on the half-line from −2
        assert_eq!(kind("x + x^-1", "0"), Some(ErrorKind::InadmissibleDirection));
    }

    #[test]
    fn manifest_inputs_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let run = run_stokes_pipeline(&inputs("x + x^-1", "pi/8")).unwrap();
        write_atomic(&path, run.manifest.to_json(true).unwrap().as_bytes()).unwrap();
        assert_eq!(read_manifest_inputs(&path).unwrap(), run.manifest.inputs);
    }
}

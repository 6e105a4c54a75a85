//! SVG pictures in the x-plane: preimages of the lines σ + αℝ, and the lifts
//! of the loops and half-lines used for the monodromy data.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::{critical_data, direction_report, fiber, LaurentPoly, PiPhase};
use crate::pipeline::{write_atomic, NumericSettings};
use crate::tracking::{monodromy_data, MonodromyData};

/// Colors of σ₁, σ₂, … in <_β order.
pub const PALETTE: [&str; 8] = ["green", "red", "purple", "orange", "blue", "brown", "teal", "magenta"];

pub fn color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub color: &'static str,
    pub points: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkerKind {
    CriticalPoint,
    BaseFiber,
    Sample,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Marker {
    pub kind: MarkerKind,
    pub color: &'static str,
    pub at: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub name: &'static str,
    pub title: String,
    pub curves: Vec<Curve>,
    pub markers: Vec<Marker>,
}

impl Scene {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let pts = self.curves.iter().flat_map(|c| c.points.iter()).chain(self.markers.iter().map(|m| &m.at));
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in pts {
            x0 = x0.min(p.re);
            x1 = x1.max(p.re);
            y0 = y0.min(-p.im);
            y1 = y1.max(-p.im);
        }
        if !x0.is_finite() {
            return (-1.0, -1.0, 2.0, 2.0);
        }
        let w = (x1 - x0).max(1e-9);
        let h = (y1 - y0).max(1e-9);
        (x0 - 0.1 * w, y0 - 0.1 * h, 1.2 * w, 1.2 * h)
    }

    /// Data coordinates with the imaginary axis flipped; viewBox is the
    /// bounding box plus 10% on every side.
    pub fn to_svg(&self) -> String {
        let (x, y, w, h) = self.bounds();
        let unit = w.max(h);
        let stroke = unit * 0.003;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x:.9} {y:.9} {w:.9} {h:.9}" width="800" height="{:.0}">"#,
            800.0 * h / w
        );
        let _ = writeln!(out, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(out, r#"<rect x="{x:.9}" y="{y:.9}" width="{w:.9}" height="{h:.9}" fill="white"/>"#);
        for c in &self.curves {
            if c.points.is_empty() {
                continue;
            }
            let mut d = String::new();
            for (k, p) in c.points.iter().enumerate() {
                let _ = write!(d, "{}{:.9},{:.9}", if k == 0 { "M" } else { " L" }, p.re, -p.im);
            }
            let _ = writeln!(out, r#"<path d="{d}" fill="none" stroke="{}" stroke-width="{stroke:.9}"/>"#, c.color);
        }
        for m in &self.markers {
            let (r, fill, outline) = match m.kind {
                MarkerKind::Sample => (unit * 0.002, m.color, "none"),
                MarkerKind::BaseFiber => (unit * 0.006, "white", m.color),
                MarkerKind::CriticalPoint => (unit * 0.008, m.color, "black"),
            };
            let _ = writeln!(
                out,
                r#"<circle cx="{:.9}" cy="{:.9}" r="{r:.9}" fill="{fill}" stroke="{outline}" stroke-width="{:.9}"/>"#,
                m.at.re,
                -m.at.im,
                stroke * 0.5
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Context {
    f: LaurentPoly,
    data: MonodromyData,
    ordered: Vec<(usize, Complex64)>,
    critical: Vec<(usize, Complex64)>,
    alpha: Complex64,
    settings: NumericSettings,
}

fn markers_common(ctx: &Context) -> Vec<Marker> {
    let mut m: Vec<Marker> = ctx
        .critical
        .iter()
        .map(|&(k, z)| Marker {
            kind: MarkerKind::CriticalPoint,
            color: color(k),
            at: z,
        })
        .collect();
    m.extend(ctx.data.labeling.sheets.positions().into_iter().map(|z| Marker {
        kind: MarkerKind::BaseFiber,
        color: "black",
        at: z,
    }));
    m
}

fn preimage_scene(ctx: &Context) -> Result<Scene> {
    let scale = ctx.ordered.iter().map(|(_, s)| s.norm()).fold(1.0_f64, f64::max);
    let reach = 2.0 * scale;
    let samples = 240;
    let mut markers = Vec::new();
    for (k, &(_, sigma)) in ctx.ordered.iter().enumerate() {
        for step in 0..=samples {
            let s = -reach + 2.0 * reach * step as f64 / samples as f64;
            if s.abs() < 1e-3 * reach {
                continue;
            }
            let fib = fiber(&ctx.f, sigma + ctx.alpha * s, &ctx.settings.root_config())?;
            markers.extend(fib.positions().into_iter().map(|z| Marker {
                kind: MarkerKind::Sample,
                color: color(k),
                at: z,
            }));
        }
    }
    markers.extend(markers_common(ctx));
    Ok(Scene {
        name: "preimages",
        title: "preimages of the lines through the critical values in direction alpha".to_string(),
        curves: Vec::new(),
        markers,
    })
}

fn lift_scene(ctx: &Context, name: &'static str, title: &str, halflines: bool) -> Scene {
    let mut curves = Vec::new();
    for k in 0..ctx.ordered.len() {
        let recorded = if halflines {
            ctx.data.halflines[k].curves.as_ref()
        } else {
            ctx.data.loops[k].curves.as_ref()
        };
        for c in recorded.into_iter().flatten() {
            curves.push(Curve {
                color: color(k),
                points: c.clone(),
            });
        }
    }
    Scene {
        name,
        title: title.to_string(),
        curves,
        markers: markers_common(ctx),
    }
}

/// The three scenes, in the order preimages, loops, half-lines.
pub fn build_figures(f_text: &str, alpha_phase: &PiPhase, settings: &NumericSettings) -> Result<Vec<Scene>> {
    let f = LaurentPoly::parse(f_text)?;
    let mut cfg = settings.track_config();
    cfg.record_curves = true;
    let crit = critical_data(&f, &cfg.roots)?;
    let sigma = crit.sigma();
    let frame = direction_report(&sigma, alpha_phase)?;
    let data = monodromy_data(&f, &crit, &frame, &cfg)?;
    let position = |i: usize| frame.order.iter().position(|&o| o == i).expect("value in order");
    let critical = crit
        .values
        .iter()
        .enumerate()
        .flat_map(|(i, v)| v.critical_points.iter().map(move |&z| (i, z)))
        .map(|(i, z)| (position(i), z))
        .collect();
    let ctx = Context {
        ordered: frame.order.iter().map(|&i| (i, sigma[i])).collect(),
        critical,
        alpha: frame.alpha,
        settings: settings.clone(),
        f,
        data,
    };
    Ok(vec![
        preimage_scene(&ctx)?,
        lift_scene(&ctx, "loops", "lifts of the loops around the critical values", false),
        lift_scene(&ctx, "halflines", "lifts of the half-lines from the critical values", true),
    ])
}

pub fn emit_figures(f_text: &str, alpha_phase: &PiPhase, settings: &NumericSettings, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for scene in build_figures(f_text, alpha_phase, settings)? {
        let path = out_dir.join(format!("{}.svg", scene.name));
        write_atomic(&path, scene.to_svg().as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_scenes() {
        let scenes = build_figures("x + x^-1", &PiPhase::new(1, 8), &NumericSettings::default()).unwrap();
        assert_eq!(scenes.len(), 3);
        let loops = &scenes[1];
        // two sheets per loop, two loops
        assert_eq!(loops.curves.len(), 4);
        let colors: Vec<_> = loops.curves.iter().map(|c| c.color).collect();
        assert_eq!(colors, ["green", "green", "red", "red"]);
        let crit = loops.markers.iter().filter(|m| m.kind == MarkerKind::CriticalPoint).count();
        assert_eq!(crit, 2);
        let svg = loops.to_svg();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}

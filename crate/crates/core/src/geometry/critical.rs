use std::cmp::Ordering;

use num_complex::Complex64;

use super::roots::{find_clustered_roots, RootFinderConfig};
use super::{GeometryError, LaurentPoly, CLUSTER_RADIUS, VALUE_DISTINCTNESS};

/// One point of a fiber f⁻¹(t), with multiplicity > 1 at ramification points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiberPoint {
    pub z: Complex64,
    pub multiplicity: usize,
}

/// The fiber f⁻¹(t) in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiber {
    pub base: Complex64,
    pub points: Vec<FiberPoint>,
}

impl Fiber {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn positions(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.z).collect()
    }

    /// Index of the point nearest to `z`, with the distance.
    pub fn nearest(&self, z: Complex64) -> Option<(usize, f64)> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, (p.z - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Smallest pairwise distance between distinct points.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                best = best.min((p.z - q.z).norm());
            }
        }
        best
    }
}

/// Canonical order on points: descending real part, ties (relative to the
/// magnitudes involved) broken by descending imaginary part.
pub fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    let scale = 1.0_f64.max(a.norm()).max(b.norm());
    if (a.re - b.re).abs() > 1e-9 * scale {
        b.re.total_cmp(&a.re)
    } else {
        b.im.total_cmp(&a.im)
    }
}

pub fn sort_canonical(points: &mut [Complex64]) {
    points.sort_by(canonical_cmp);
}

/// The fiber f⁻¹(t) ⊂ 𝔾ₘ: roots of xᵇ(f(x) − t) clustered with multiplicity.
pub fn fiber(f: &LaurentPoly, t: Complex64, cfg: &RootFinderConfig) -> Result<Fiber, GeometryError> {
    if f.is_constant() {
        return Err(GeometryError::ConstantFunction);
    }
    let mut points: Vec<FiberPoint> = find_clustered_roots(&f.cleared(t), cfg, CLUSTER_RADIUS)?
        .into_iter()
        .filter(|c| c.center.norm() > 1e-300)
        .map(|c| FiberPoint {
            z: c.center,
            multiplicity: c.multiplicity,
        })
        .collect();
    points.sort_by(|a, b| canonical_cmp(&a.z, &b.z));
    Ok(Fiber { base: t, points })
}

/// A critical value σ with the critical points above it and its full fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalValue {
    pub value: Complex64,
    pub critical_points: Vec<Complex64>,
    pub fiber: Fiber,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalData {
    /// Zeros of f′ in 𝔾ₘ, canonical order, with multiplicity.
    pub critical_points: Vec<FiberPoint>,
    /// Distinct critical values Σ in canonical order.
    pub values: Vec<CriticalValue>,
}

impl CriticalData {
    pub fn sigma(&self) -> Vec<Complex64> {
        self.values.iter().map(|v| v.value).collect()
    }
}

/// Critical points, critical values and critical fibers of `f`.
pub fn critical_data(f: &LaurentPoly, cfg: &RootFinderConfig) -> Result<CriticalData, GeometryError> {
    if f.is_constant() {
        return Err(GeometryError::ConstantFunction);
    }
    let numerator = f.critical_numerator();
    let mut critical_points: Vec<FiberPoint> = find_clustered_roots(&numerator, cfg, CLUSTER_RADIUS)?
        .into_iter()
        .map(|c| FiberPoint {
            z: c.center,
            multiplicity: c.multiplicity,
        })
        .collect();
    critical_points.sort_by(|a, b| canonical_cmp(&a.z, &b.z));
    if let Some(p) = critical_points.iter().find(|p| p.multiplicity > 1) {
        return Err(GeometryError::DegenerateCriticalPoint {
            re: p.z.re,
            im: p.z.im,
            multiplicity: p.multiplicity,
        });
    }

    let numeric = f.numeric();
    let mut groups: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    for p in &critical_points {
        let v = numeric.eval(p.z);
        match groups.iter_mut().find(|(w, _)| (w - v).norm() < VALUE_DISTINCTNESS) {
            Some((_, pts)) => pts.push(p.z),
            None => groups.push((v, vec![p.z])),
        }
    }
    groups.sort_by(|a, b| canonical_cmp(&a.0, &b.0));

    let values = groups
        .into_iter()
        .map(|(value, critical_points)| {
            let fiber = fiber(f, value, cfg)?;
            if fiber.total_multiplicity() != f.covering_degree() {
                return Err(GeometryError::FiberCount {
                    expected: f.covering_degree(),
                    found: fiber.total_multiplicity(),
                });
            }
            Ok(CriticalValue {
                value,
                critical_points,
                fiber,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CriticalData {
        critical_points,
        values,
    })
}

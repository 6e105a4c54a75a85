use serde::Serialize;

use super::DiffOperator;
use crate::exact::{format_rational, Rational};

/// Lower boundary of the Newton polygon, from the rightmost point of minimal
/// height to the top-order point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(i64, i64)>,
    pub vertices: Vec<(i64, i64)>,
    /// Positive edge slopes, ascending.
    pub slopes: Vec<Rational>,
}

impl NewtonPolygon {
    /// No positive slope: the singularity is regular.
    pub fn is_regular(&self) -> bool {
        self.slopes.is_empty()
    }
}

pub fn newton_polygon(points: &[(i64, i64)]) -> NewtonPolygon {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    let Some(&(n, _)) = pts.last() else {
        return NewtonPolygon {
            points: pts,
            vertices: Vec::new(),
            slopes: Vec::new(),
        };
    };
    let low = pts.iter().map(|p| p.1).min().unwrap_or(0);
    let mut current = *pts.iter().rev().find(|p| p.1 == low).unwrap();
    let mut vertices = vec![current];
    let mut slopes = Vec::new();
    while current.0 < n {
        // steepest-descent choice: smallest slope, ties to the farthest point
        let next = pts
            .iter()
            .filter(|p| p.0 > current.0)
            .min_by(|p, q| {
                let sp = Rational::new((p.1 - current.1).into(), (p.0 - current.0).into());
                let sq = Rational::new((q.1 - current.1).into(), (q.0 - current.0).into());
                sp.cmp(&sq).then(q.0.cmp(&p.0))
            })
            .copied()
            .expect("points to the right");
        slopes.push(Rational::new((next.1 - current.1).into(), (next.0 - current.0).into()));
        vertices.push(next);
        current = next;
    }
    NewtonPolygon {
        points: pts,
        vertices,
        slopes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonReport {
    /// From the points (k, ord_θ aₖ).
    pub at_zero: NewtonPolygon,
    /// From the points (k, −deg_θ aₖ), i.e. in θ⁻¹.
    pub at_infinity: NewtonPolygon,
}

impl NewtonReport {
    pub fn summary(&self) -> NewtonSummary {
        let s = |p: &NewtonPolygon| p.slopes.iter().map(format_rational).collect();
        NewtonSummary {
            points: self.at_zero.points.clone(),
            vertices: self.at_zero.vertices.clone(),
            slopes: s(&self.at_zero),
            regular_at_zero: self.at_zero.is_regular(),
            infinity_points: self.at_infinity.points.clone(),
            infinity_slopes: s(&self.at_infinity),
            regular_at_infinity: self.at_infinity.is_regular(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonSummary {
    pub points: Vec<(i64, i64)>,
    pub vertices: Vec<(i64, i64)>,
    pub slopes: Vec<String>,
    pub regular_at_zero: bool,
    pub infinity_points: Vec<(i64, i64)>,
    pub infinity_slopes: Vec<String>,
    pub regular_at_infinity: bool,
}

pub fn newton_slopes(p: &DiffOperator) -> NewtonReport {
    let mut zero = Vec::new();
    let mut infinity = Vec::new();
    for (k, a) in p.coefficients().iter().enumerate() {
        if let (Some(o), Some(d)) = (a.ord(), a.degree()) {
            zero.push((k as i64, o));
            infinity.push((k as i64, -d));
        }
    }
    NewtonReport {
        at_zero: newton_polygon(&zero),
        at_infinity: newton_polygon(&infinity),
    }
}

//! Aberth–Ehrlich simultaneous root finder and root clustering.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootFinderConfig {
    pub max_iterations: usize,
    /// Bound on the relative residual |p(z)| / Σ|aₖ||z|ᵏ.
    pub tol: f64,
    pub seed: u64,
}

impl Default for RootFinderConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            tol: 1e-12,
            seed: super::DEFAULT_SEED,
        }
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// |p(z)| relative to the magnitude of the terms that were summed.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let r = z.norm();
    let mut scale = 0.0;
    let mut pow = 1.0;
    for c in coeffs {
        scale += c.norm() * pow;
        pow *= r;
    }
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// All complex roots (with repetition) of the polynomial with ascending
/// coefficients `coeffs`.
pub fn find_roots(coeffs: &[Complex64], cfg: &RootFinderConfig) -> Result<Vec<Complex64>, GeometryError> {
    let top = coeffs.iter().rposition(|c| !c.is_zero());
    let Some(n) = top else {
        return Err(GeometryError::ZeroPolynomial);
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs[..=n].iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }

    // Fujiwara bound on the root moduli; start on a circle of half that size.
    let bound = (1..=n)
        .map(|k| {
            let c = monic[n - k].norm();
            if k == n {
                (c / 2.0).powf(1.0 / k as f64)
            } else {
                c.powf(1.0 / k as f64)
            }
        })
        .fold(0.0_f64, f64::max)
        * 2.0;
    let radius = (bound / 2.0).max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let offset: f64 = 0.4 + rng.gen_range(0.0..0.1);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = TAU * k as f64 / n as f64 + offset + rng.gen_range(0.0..0.05);
            let r = radius * (1.0 + rng.gen_range(-0.05..0.05));
            Complex64::from_polar(r, angle)
        })
        .collect();

    for _ in 0..cfg.max_iterations {
        let mut max_step = 0.0_f64;
        for k in 0..n {
            let (p, dp) = horner(&monic, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.is_zero() {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if max_step < 4.0 * f64::EPSILON {
            break;
        }
    }

    let worst = z.iter().map(|&r| relative_residual(&monic, r)).fold(0.0_f64, f64::max);
    if !worst.is_finite() || worst > cfg.tol {
        return Err(GeometryError::RootFindingDiverged { residual: worst });
    }
    Ok(z)
}

/// A point with its multiplicity after merging nearly coincident roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// Single-linkage clustering at distance `< radius`; centers are means.
pub fn cluster_roots(roots: &[Complex64], radius: f64) -> Vec<Cluster> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(roots[i]),
            None => groups.push((r, vec![roots[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| Cluster {
            center: members.iter().sum::<Complex64>() / members.len() as f64,
            multiplicity: members.len(),
        })
        .collect()
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Newton refinement of a root of multiplicity `m`, run on the (m−1)-th
/// derivative where the root is simple. Falls back to the input when the
/// iteration does not reduce the residual.
pub fn polish(coeffs: &[Complex64], z0: Complex64, multiplicity: usize) -> Complex64 {
    let mut q = coeffs.to_vec();
    for _ in 1..multiplicity {
        q = derivative(&q);
    }
    let mut z = z0;
    let start = horner(&q, z0).0.norm();
    for _ in 0..8 {
        let (p, dp) = horner(&q, z);
        if p.is_zero() || dp.is_zero() {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm().max(1e-300) {
            break;
        }
    }
    if horner(&q, z).0.norm() <= start && (z - z0).norm() < 1e-3 * z0.norm().max(1.0) {
        z
    } else {
        z0
    }
}

/// Roots clustered at distance `< radius`, with every cluster center polished.
pub fn find_clustered_roots(
    coeffs: &[Complex64],
    cfg: &RootFinderConfig,
    radius: f64,
) -> Result<Vec<Cluster>, GeometryError> {
    let roots = find_roots(coeffs, cfg)?;
    Ok(cluster_roots(&roots, radius)
        .into_iter()
        .map(|c| Cluster {
            center: polish(coeffs, c.center, c.multiplicity),
            multiplicity: c.multiplicity,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut p = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::zero(); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            p = next;
        }
        p
    }

    fn assert_same_multiset(mut found: Vec<Complex64>, mut expected: Vec<Complex64>, tol: f64) {
        assert_eq!(found.len(), expected.len());
        while let Some(e) = expected.pop() {
            let (idx, d) = found
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - e).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(d < tol, "root {e} missing (closest at distance {d})");
            found.remove(idx);
        }
    }

    #[test]
    fn fourth_roots_of_minus_one() {
        let roots = find_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &RootFinderConfig::default()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_same_multiset(roots, vec![c(s, s), c(-s, s), c(-s, -s), c(s, -s)], 1e-12);
    }

    #[test]
    fn recovers_prescribed_roots() {
        let expected = vec![c(3.0, 0.0), c(-1.0, 2.0), c(0.5, -0.25), c(0.0, 1.0), c(-2.0, -2.0)];
        let roots = find_roots(&poly_from_roots(&expected), &RootFinderConfig::default()).unwrap();
        assert_same_multiset(roots, expected, 1e-10);
    }

    #[test]
    fn double_root_clusters() {
        // (x - 1)^2 (x + 2)
        let roots = find_roots(&poly_from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]), &RootFinderConfig::default()).unwrap();
        let clusters = cluster_roots(&roots, 1e-6);
        assert_eq!(clusters.len(), 2);
        assert!(clusters.iter().any(|c| c.multiplicity == 2));
        let polished = find_clustered_roots(&poly_from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]), &RootFinderConfig::default(), 1e-6).unwrap();
        let double = polished.iter().find(|c| c.multiplicity == 2).unwrap();
        assert!((double.center - c(1.0, 0.0)).norm() < 1e-13, "{double:?}");
    }

    #[test]
    fn constant_and_zero_polynomials() {
        assert!(find_roots(&[c(2.0, 0.0)], &RootFinderConfig::default()).unwrap().is_empty());
        assert_eq!(find_roots(&[Complex64::zero()], &RootFinderConfig::default()), Err(GeometryError::ZeroPolynomial));
    }

    #[test]
    fn iteration_cap_reports_divergence() {
        let cfg = RootFinderConfig { max_iterations: 0, ..Default::default() };
        let p = poly_from_roots(&[c(3.0, 0.0), c(-1.0, 2.0), c(0.5, -0.25)]);
        assert!(matches!(find_roots(&p, &cfg), Err(GeometryError::RootFindingDiverged { .. })));
    }

    #[test]
    fn seed_changes_nothing_but_order() {
        let p = poly_from_roots(&[c(3.0, 0.0), c(-1.0, 2.0), c(0.5, -0.25), c(0.0, 1.0)]);
        let a = find_roots(&p, &RootFinderConfig { seed: 1, ..Default::default() }).unwrap();
        let b = find_roots(&p, &RootFinderConfig { seed: 99, ..Default::default() }).unwrap();
        assert_same_multiset(a, b, 1e-10);
    }
}

//! The quiver (Ψ, Φᵢ, uᵢ, vᵢ) read off from monodromies and boundary maps,
//! and the Stokes matrices it determines.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{DirectionFrame, PhaseInterval, PiPhase};
use crate::intmat::{IntMatrix, IntMatrixError};
use crate::tracking::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StokesError {
    #[error("critical value #{index}: {reason}")]
    UnsupportedDegeneracy { index: usize, reason: String },
    #[error("critical value #{index}: {reason}")]
    InconsistentTopology { index: usize, reason: String },
    #[error("expected as many boundary maps as monodromies ({monodromies}), got {boundaries}")]
    CountMismatch { monodromies: usize, boundaries: usize },
    #[error(transparent)]
    Matrix(#[from] IntMatrixError),
}

/// Data attached to one critical value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverVertex {
    pub t: IntMatrix,
    pub b: IntMatrix,
    pub phi_dim: usize,
    /// Φ_dim × n.
    pub u: IntMatrix,
    /// n × Φ_dim.
    pub v: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub n: usize,
    pub vertices: Vec<QuiverVertex>,
}

fn check(index: usize, ok: bool, reason: &str) -> Result<(), StokesError> {
    if ok {
        Ok(())
    } else {
        Err(StokesError::InconsistentTopology {
            index,
            reason: reason.to_string(),
        })
    }
}

/// Cokernel data for each (Tᵢ, bᵢ), in the order given (which should be <_β).
pub fn extract_quiver(ts: &[IntMatrix], bs: &[IntMatrix]) -> Result<Quiver, StokesError> {
    if ts.len() != bs.len() {
        return Err(StokesError::CountMismatch {
            monodromies: ts.len(),
            boundaries: bs.len(),
        });
    }
    let n = ts.first().map_or(0, IntMatrix::rows);
    let mut vertices = Vec::with_capacity(ts.len());
    for (index, (t, b)) in ts.iter().zip(bs).enumerate() {
        let unsupported = |reason: &str| StokesError::UnsupportedDegeneracy {
            index,
            reason: reason.to_string(),
        };
        if t.rows() != n || t.cols() != n || b.rows() != n {
            return Err(StokesError::Matrix(IntMatrixError::Shape(t.rows(), t.cols(), b.rows(), b.cols())));
        }
        let (p, q) = Permutation::from_matrix(t)
            .and_then(|perm| perm.as_transposition())
            .ok_or_else(|| unsupported("monodromy is not a transposition"))?;
        let rank = b.rank();
        if rank + 1 != n {
            return Err(unsupported(&format!("boundary map has rank {rank}, expected {}", n - 1)));
        }
        let mut u = IntMatrix::zeros(1, n);
        u.set(0, p, 1);
        u.set(0, q, -1);
        let v = u.transpose();

        let ub = u.mul(b)?;
        check(index, ub.to_rows().iter().flatten().all(|&x| x == 0), "u·b ≠ 0")?;
        let vu = v.mul(&u)?;
        let one_minus_t = IntMatrix::identity(n).sub(t)?;
        check(index, vu == one_minus_t, "v·u ≠ 1 − T")?;
        let local = IntMatrix::identity(1).sub(&u.mul(&v)?)?;
        check(index, local.det() != 0.into(), "1 − u·v is singular")?;

        vertices.push(QuiverVertex {
            t: t.clone(),
            b: b.clone(),
            phi_dim: n - rank,
            u,
            v,
        });
    }
    Ok(Quiver { n, vertices })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StokesPair {
    pub s_beta: IntMatrix,
    pub s_minus_beta: IntMatrix,
    pub beta_phase: PiPhase,
    pub sector_alpha: PhaseInterval,
    pub sector_minus_alpha: PhaseInterval,
}

fn block_offsets(q: &Quiver) -> Vec<usize> {
    let mut offsets = vec![0];
    for v in &q.vertices {
        offsets.push(offsets.last().unwrap() + v.phi_dim);
    }
    offsets
}

/// S_β has blocks uᵢvⱼ above the diagonal and identities on it; S_{−β} has
/// 1 − uᵢvᵢ on the diagonal and −uᵢvⱼ below it.
pub fn assemble_stokes(q: &Quiver, frame: &DirectionFrame) -> Result<StokesPair, StokesError> {
    let offsets = block_offsets(q);
    let size = *offsets.last().unwrap();
    let mut s_beta = IntMatrix::identity(size);
    let mut s_minus_beta = IntMatrix::zeros(size, size);
    let place = |target: &mut IntMatrix, i: usize, j: usize, block: &IntMatrix| {
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                target.set(offsets[i] + r, offsets[j] + c, block.get(r, c));
            }
        }
    };
    for (i, vi) in q.vertices.iter().enumerate() {
        for (j, vj) in q.vertices.iter().enumerate() {
            let uv = vi.u.mul(&vj.v)?;
            match i.cmp(&j) {
                std::cmp::Ordering::Less => place(&mut s_beta, i, j, &uv),
                std::cmp::Ordering::Equal => {
                    let diag = IntMatrix::identity(vi.phi_dim).sub(&uv)?;
                    place(&mut s_minus_beta, i, i, &diag);
                }
                std::cmp::Ordering::Greater => place(&mut s_minus_beta, i, j, &uv.neg()),
            }
        }
    }
    Ok(StokesPair {
        s_beta,
        s_minus_beta,
        beta_phase: frame.beta_phase.clone(),
        sector_alpha: frame.sector_alpha.clone(),
        sector_minus_alpha: frame.sector_minus_alpha.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::direction_report;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn reference_t() -> Vec<IntMatrix> {
        [(0, 1), (1, 2), (0, 3), (0, 2)]
            .iter()
            .map(|&(p, q)| Permutation::transposition(4, p, q).to_matrix())
            .collect()
    }

    fn reference_b() -> Vec<IntMatrix> {
        vec![
            IntMatrix::from_literal([[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]),
            IntMatrix::from_literal([[0, 0, 1], [1, 0, 0], [1, 0, 0], [0, 1, 0]]),
            IntMatrix::from_literal([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0]]),
            IntMatrix::from_literal([[1, 0, 0], [0, 0, 1], [1, 0, 0], [0, 1, 0]]),
        ]
    }

    fn p13_frame() -> DirectionFrame {
        let s = 4.0 / 27f64.powf(0.25);
        let sigma = [Complex64::new(0.0, s), Complex64::new(-s, 0.0), Complex64::new(s, 0.0), Complex64::new(0.0, -s)];
        direction_report(&sigma, &PiPhase::new(1, 8)).unwrap()
    }

    #[test]
    fn p13_quiver() {
        let q = extract_quiver(&reference_t(), &reference_b()).unwrap();
        let us: Vec<Vec<i64>> = q.vertices.iter().map(|v| v.u.to_rows()[0].clone()).collect();
        assert_eq!(us, vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![1, 0, 0, -1], vec![1, 0, -1, 0]]);
        for v in &q.vertices {
            assert_eq!(v.v, v.u.transpose());
            assert_eq!(v.phi_dim, 1);
        }
        let vu = q.vertices[0].v.mul(&q.vertices[0].u).unwrap();
        assert_eq!(vu, IntMatrix::from_literal([[1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]));
    }

    #[test]
    fn p13_stokes_matrices() {
        let q = extract_quiver(&reference_t(), &reference_b()).unwrap();
        let pair = assemble_stokes(&q, &p13_frame()).unwrap();
        let s = IntMatrix::from_literal([[1, -1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]);
        assert_eq!(pair.s_beta, s);
        assert_eq!(
            pair.s_minus_beta,
            IntMatrix::from_literal([[-1, 0, 0, 0], [1, -1, 0, 0], [-1, 0, -1, 0], [-1, -1, -1, -1]])
        );
        assert_eq!(pair.s_minus_beta, s.transpose().neg());
        assert_eq!(pair.s_beta.det(), 1.into());
    }

    #[test]
    fn p1_quiver() {
        let t = Permutation::transposition(2, 0, 1).to_matrix();
        let b = IntMatrix::from_literal([[1], [1]]);
        let q = extract_quiver(&[t.clone(), t], &[b.clone(), b]).unwrap();
        assert_eq!(q.vertices[0].u, IntMatrix::from_literal([[1, -1]]));
        let sigma = [Complex64::new(2.0, 0.0), Complex64::new(-2.0, 0.0)];
        let frame = direction_report(&sigma, &PiPhase::new(1, 8)).unwrap();
        let pair = assemble_stokes(&q, &frame).unwrap();
        assert_eq!(pair.s_beta, IntMatrix::from_literal([[1, 2], [0, 1]]));
    }

    #[test]
    fn rejects_non_transposition() {
        let t = Permutation::from_images(vec![1, 2, 0]).unwrap().to_matrix();
        let b = IntMatrix::from_literal([[1, 0], [1, 0], [0, 1]]);
        assert!(matches!(extract_quiver(&[t], &[b]), Err(StokesError::UnsupportedDegeneracy { index: 0, .. })));
    }

    #[test]
    fn rejects_low_rank_boundary() {
        let t = Permutation::transposition(3, 0, 1).to_matrix();
        let b = IntMatrix::from_literal([[1], [1], [1]]);
        assert!(matches!(extract_quiver(&[t], &[b]), Err(StokesError::UnsupportedDegeneracy { .. })));
    }

    #[test]
    fn detects_inconsistent_boundary() {
        // T swaps sheets 0 and 1 but b merges 1 and 2.
        let t = Permutation::transposition(3, 0, 1).to_matrix();
        let b = IntMatrix::from_literal([[1, 0], [0, 1], [0, 1]]);
        assert!(matches!(extract_quiver(&[t], &[b]), Err(StokesError::InconsistentTopology { .. })));
    }

    proptest! {
        #[test]
        fn quiver_identities_and_relabeling(perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()) {
            // relabel the reference sheets by `perm`
            let p = Permutation::from_images(perm.clone()).unwrap();
            let pm = p.to_matrix();
            let ts: Vec<IntMatrix> = reference_t().iter().map(|t| pm.mul(t).unwrap().mul(&pm.transpose()).unwrap()).collect();
            let bs: Vec<IntMatrix> = reference_b().iter().map(|b| pm.mul(b).unwrap()).collect();
            let q = extract_quiver(&ts, &bs).unwrap();
            for (v, (t, b)) in q.vertices.iter().zip(ts.iter().zip(&bs)) {
                prop_assert!(v.u.mul(b).unwrap().to_rows().iter().flatten().all(|&x| x == 0));
                prop_assert_eq!(v.v.mul(&v.u).unwrap(), IntMatrix::identity(4).sub(t).unwrap());
            }
            let s = assemble_stokes(&q, &p13_frame()).unwrap().s_beta;
            let reference = assemble_stokes(&extract_quiver(&reference_t(), &reference_b()).unwrap(), &p13_frame()).unwrap().s_beta;
            prop_assert!(s.is_unipotent_upper());
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert_eq!(s.get(i, j).abs(), reference.get(i, j).abs());
                }
            }
        }
    }
}

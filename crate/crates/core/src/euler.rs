//! Twisting sheaves on the weighted projective line ℙ(a, b) and the Gram
//! matrix of χ on the collection 𝒪, 𝒪(1), …, 𝒪(a+b−1).

use serde::Serialize;

use crate::intmat::IntMatrix;

/// (h⁰, h¹) of 𝒪(k): lattice points am + bn = k with m, n ≥ 0, respectively m, n < 0.
pub fn twist_cohomology(a: u32, b: u32, k: i64) -> (u64, u64) {
    assert!(a >= 1 && b >= 1, "weights must be positive");
    let (a, b) = (a as i64, b as i64);
    let count = |k: i64| -> u64 {
        if k < 0 {
            return 0;
        }
        (0..=k / a).filter(|m| (k - a * m) % b == 0).count() as u64
    };
    // m, n < 0 with am + bn = k  ⇔  m', n' ≥ 0 with am' + bn' = −k − a − b
    (count(k), count(-k - a - b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramMatrix {
    pub a: u32,
    pub b: u32,
    pub matrix: IntMatrix,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn gram_matrix(a: u32, b: u32) -> GramMatrix {
    let n = (a + b) as usize;
    let mut matrix = IntMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let (h0, h1) = twist_cohomology(a, b, (j - i) as i64);
            matrix.set(i, j, h0 as i64 - h1 as i64);
        }
    }
    GramMatrix { a, b, matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn p13_cohomology() {
        assert_eq!(twist_cohomology(1, 3, 3), (2, 0));
        assert_eq!(twist_cohomology(1, 3, 0), (1, 0));
        assert_eq!(twist_cohomology(1, 3, -4), (0, 1));
        assert_eq!(twist_cohomology(1, 3, -1), (0, 0));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_matrix(1, 3).matrix, IntMatrix::from_literal([[1, 1, 1, 2], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]]));
        assert_eq!(gram_matrix(1, 1).matrix, IntMatrix::from_literal([[1, 2], [0, 1]]));
        assert_eq!(gram_matrix(1, 2).matrix, IntMatrix::from_literal([[1, 1, 2], [0, 1, 1], [0, 0, 1]]));
    }

    proptest! {
        #[test]
        fn gram_is_unipotent_toeplitz(a in 1u32..6, b in 1u32..6) {
            let g = gram_matrix(a, b).matrix;
            prop_assert!(g.is_unipotent_upper());
            prop_assert_eq!(g.det(), 1.into());
            let n = g.rows();
            for i in 1..n {
                for j in i..n {
                    prop_assert_eq!(g.get(i, j), g.get(i - 1, j - 1));
                }
            }
            for k in 0..(a + b) as i64 {
                prop_assert_eq!(twist_cohomology(a, b, k).1, 0);
            }
        }

        // Serre duality on ℙ(a, b): h¹(k) = h⁰(−k − a − b)
        #[test]
        fn duality(a in 1u32..6, b in 1u32..6, k in -30i64..30) {
            prop_assert_eq!(twist_cohomology(a, b, k).1, twist_cohomology(a, b, -k - (a + b) as i64).0);
        }
    }
}

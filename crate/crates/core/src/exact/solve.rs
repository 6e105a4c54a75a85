use super::{ExactError, LaurentFraction, ThetaLaurent, ThetaMatrix};

/// Solves `a · x = y` over the fraction field of ℚ[θ, θ⁻¹].
///
/// Forward elimination is fraction-free (Bareiss): every intermediate entry
/// stays a Laurent polynomial because each division by the previous pivot is
/// exact. Only the final back substitution works with fractions.
pub fn fraction_free_solve(
    a: &ThetaMatrix,
    y: &[ThetaLaurent],
) -> Result<Vec<LaurentFraction>, ExactError> {
    if !a.is_square() {
        return Err(ExactError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if y.len() != n {
        return Err(ExactError::DimensionMismatch {
            expected: n,
            actual: y.len(),
        });
    }

    let mut m: Vec<Vec<ThetaLaurent>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(y[i].clone());
            row
        })
        .collect();

    let mut prev = ThetaLaurent::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms())
            .ok_or(ExactError::SingularSystem)?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let cross = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = cross
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
            m[i][k] = ThetaLaurent::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![LaurentFraction::from_laurent(ThetaLaurent::zero()); n];
    for i in (0..n).rev() {
        let mut acc = LaurentFraction::from_laurent(m[i][n].clone());
        for j in i + 1..n {
            acc = acc.sub(&LaurentFraction::from_laurent(m[i][j].clone()).mul(&x[j]));
        }
        x[i] = acc.div(&LaurentFraction::from_laurent(m[i][i].clone()))?;
    }
    Ok(x)
}

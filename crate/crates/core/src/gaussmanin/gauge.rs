use super::{GmError, ThetaConnection};
use crate::exact::{rat, ThetaLaurent, ThetaMatrix};
use crate::quantum::QuantumConnectionData;

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeReport {
    pub matches: bool,
    /// Gauge-transformed M minus (−C·z⁻¹ + μ).
    pub residual: ThetaMatrix,
    pub transformed: ThetaMatrix,
    pub flipped: bool,
}

/// Applies h = θ^{−1/2} (M ↦ M − ½) and, when `flip` is set, θ ↦ −θ, then
/// compares with the quantum connection −C/z + μ entry by entry.
pub fn gauge_compare(conn: &ThetaConnection, quantum: &QuantumConnectionData, flip: bool) -> Result<GaugeReport, GmError> {
    let n = conn.rank();
    if n != quantum.rank() {
        return Err(GmError::RankMismatch {
            left: n,
            right: quantum.rank(),
        });
    }
    let shift = ThetaMatrix::from_fn(n, n, |i, j| if i == j { ThetaLaurent::constant(rat(1, 2)) } else { ThetaLaurent::zero() });
    let mut transformed = conn.matrix.sub(&shift)?;
    if flip {
        transformed = transformed.map(ThetaLaurent::negate_variable);
    }
    let residual = transformed.sub(&quantum.connection_matrix())?;
    Ok(GaugeReport {
        matches: residual.is_zero(),
        residual,
        transformed,
        flipped: flip,
    })
}

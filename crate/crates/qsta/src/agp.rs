use num_complex::Complex64;
use qcore::{herm_eig, DenseOperator, QcoreError};

use crate::error::{Result, StaError};

/// Spectral adiabatic gauge potential in the parallel-transport gauge:
/// strictly off-diagonal in the instantaneous eigenbasis.
#[derive(Debug, Clone)]
pub struct AGPSpectral {
    pub operator: DenseOperator,
    /// Smallest |E_n - E_m| over distinct pairs encountered while building.
    pub min_gap: f64,
}

/// A = i sum_{n != m} |m><m| dH |n><n| / (E_n - E_m).
///
/// `dh` is the derivative of H with respect to the drive parameter; the
/// result is the per-unit-rate gauge potential, so callers multiply by the
/// ramp rate. Any spectral gap below `gap_tol` (default 1e-9 max|E|) is a
/// hard error: a regularized potential would silently break the exact
/// transport guarantee.
pub fn exact_agp(
    h: &DenseOperator,
    dh: &DenseOperator,
    gap_tol: Option<f64>,
) -> Result<AGPSpectral> {
    if h.dim() != dh.dim() {
        return Err(StaError::Core(QcoreError::DimMismatch {
            expected: h.dim(),
            got: dh.dim(),
        }));
    }
    let asym = dh.asymmetry();
    if asym > 1e-12 {
        return Err(StaError::Core(QcoreError::NotHermitian {
            asymmetry: asym,
        }));
    }
    let eig = herm_eig(h)?;
    let n = h.dim();
    let emax = eig.values.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let tol = gap_tol.unwrap_or(1e-9 * emax.max(1e-300));

    // dH in the eigenbasis: W = V^dag dH V
    let w = eig
        .vectors
        .adjoint()
        .matmul(dh)?
        .matmul(&eig.vectors)?;

    let mut min_gap = f64::INFINITY;
    let mut a_eig = DenseOperator::zeros(n);
    for m in 0..n {
        for nn in 0..n {
            if m == nn {
                continue;
            }
            let gap = eig.values[nn] - eig.values[m];
            if gap.abs() < min_gap {
                min_gap = gap.abs();
            }
            if gap.abs() < tol {
                return Err(StaError::Core(QcoreError::NearDegenerateGap {
                    gap: gap.abs(),
                    tol,
                }));
            }
            a_eig.set(m, nn, Complex64::new(0.0, 1.0) * w.get(m, nn) / gap);
        }
    }
    let a = eig
        .vectors
        .matmul(&a_eig)?
        .matmul(&eig.vectors.adjoint())?;
    // The exact potential is Hermitian; rotating back and forth leaves an
    // anti-Hermitian rounding residue that we project out.
    let a = a.add(&a.adjoint())?.scale_real(0.5).into_hermitian()?;
    Ok(AGPSpectral {
        operator: a,
        min_gap,
    })
}

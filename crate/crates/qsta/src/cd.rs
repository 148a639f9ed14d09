use num_complex::Complex64;
use qcore::{paulis, DenseOperator, PauliOp, PauliSum};
use qmodels::collective_spin_ops;

use crate::error::{Result, StaError};

/// Exact two-level driving coefficient: -Delta nudot / (2 (Delta^2 + nu^2)).
pub fn cd_lz_coefficient(delta: f64, nu: f64, nudot: f64) -> f64 {
    -delta * nudot / (2.0 * (delta * delta + nu * nu))
}

/// Exact range-m coefficient of the ground-state driving term of the
/// periodic x-coupled chain: h_m(g) = (g^{2m} + g^N) / (8 g^{m+1} (1 + g^N)).
pub fn ising_h_m(n: usize, m: usize, g: f64) -> f64 {
    let gn = g.powi(n as i32);
    (g.powi(2 * m as i32) + gn) / (8.0 * g.powi(m as i32 + 1) * (1.0 + gn))
}

/// Range-m string family A^[m] = sum_n (Y_n Z..Z X_{n+m} + X_n Z..Z Y_{n+m})
/// over all N translations of the periodic chain.
pub fn range_m_family(n: usize, m: usize) -> PauliSum {
    let one = Complex64::new(1.0, 0.0);
    let mut sum = PauliSum::zero(n);
    for start in 0..n {
        for flip in 0..2 {
            let (first, last) = if flip == 0 {
                (PauliOp::Y, PauliOp::X)
            } else {
                (PauliOp::X, PauliOp::Y)
            };
            let mut ops = vec![(start, first), ((start + m) % n, last)];
            for step in 1..m {
                ops.push(((start + step) % n, PauliOp::Z));
            }
            sum = sum.add(&PauliSum::term(n, one, &ops)).unwrap();
        }
    }
    sum
}

/// Ground-state counterdiabatic term of the periodic x-coupled chain:
/// A_GS = -gdot [ sum_{m=1}^{N/2-1} h_m A^[m] + (1/2) h_{N/2} A^[N/2] ].
pub fn ising_gs_cd(n: usize, g: f64, gdot: f64) -> Result<PauliSum> {
    if n % 2 != 0 || n < 2 {
        return Err(StaError::InvalidParameter(format!(
            "ground-state driving term needs an even chain, got N = {n}"
        )));
    }
    if g == 0.0 {
        return Err(StaError::InvalidParameter(
            "coefficients h_m(g) are singular at g = 0".into(),
        ));
    }
    let mut a = PauliSum::zero(n);
    for m in 1..n / 2 {
        let w = -gdot * ising_h_m(n, m, g);
        a = a.add(&range_m_family(n, m).scale_real(w))?;
    }
    let w = -gdot * 0.5 * ising_h_m(n, n / 2, g);
    a = a.add(&range_m_family(n, n / 2).scale_real(w))?;
    Ok(a)
}

/// Per-mode sigma_y coefficient of the momentum-space driving term:
/// -gdot sin k / (2 (1 + g^2 - 2 g cos k)).
pub fn ising_momentum_cd_coeff(k: f64, g: f64, gdot: f64) -> f64 {
    -gdot * k.sin() / (2.0 * (1.0 + g * g - 2.0 * g * k.cos()))
}

/// Per-mode 2x2 driving operators for the positive-parity momentum modes.
pub fn ising_momentum_cd(n: usize, g: f64, gdot: f64) -> Result<Vec<DenseOperator>> {
    let (modes, _) = qmodels::ising_momentum_modes(n, g)?;
    Ok(modes
        .iter()
        .map(|m| paulis::sigma_y::<f64>().scale_real(ising_momentum_cd_coeff(m.k, g, gdot)))
        .collect())
}

/// Oscillator-approximation driving term for the collective-spin model in
/// the broken phase g > 1:
/// A_GS = -gdot / (4 N g (g - 1)) (Jx Jy + Jy Jx).
///
/// The coefficient is the large-N limit of the exact gauge potential's
/// (Jx Jy + Jy Jx) component: the mode family's Bogoliubov angle obeys
/// tanh(alpha) = 1/(2g - 1), so d(alpha)/dg = -1/(2g(g-1)) and the squeeze
/// generator carries alpha'/4 = -1/(8g(g-1)) per unit rate.
pub fn lmg_gs_cd(n: usize, g: f64, gdot: f64) -> Result<DenseOperator> {
    if g <= 1.0 {
        return Err(StaError::OutOfPhase(g));
    }
    let ops = collective_spin_ops(n);
    let anti = ops
        .jx
        .matmul(&ops.jy)?
        .add(&ops.jy.matmul(&ops.jx)?)?;
    let coeff = -gdot / (4.0 * n as f64 * g * (g - 1.0));
    Ok(anti.scale_real(coeff).into_hermitian()?)
}

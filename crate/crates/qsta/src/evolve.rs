use qcore::{expm_herm, herm_eig, DenseOperator, StateVector};

use crate::error::Result;

/// Piecewise-constant propagation with midpoint Hamiltonian evaluation:
/// psi_{j+1} = exp(-i H((j+1/2) dt) dt) psi_j.
///
/// Returns the n_steps + 1 states at t = 0, dt, ..., T.
pub fn evolve_schedule<F>(
    h_of_t: F,
    psi0: &StateVector,
    t_final: f64,
    n_steps: usize,
) -> Result<Vec<StateVector>>
where
    F: Fn(f64) -> DenseOperator,
{
    assert!(n_steps >= 1, "need at least one step");
    let dt = t_final / n_steps as f64;
    let mut states = Vec::with_capacity(n_steps + 1);
    states.push(psi0.clone());
    let mut psi = psi0.clone();
    for j in 0..n_steps {
        let t_mid = (j as f64 + 0.5) * dt;
        let u = expm_herm(&h_of_t(t_mid), dt)?;
        psi = u.apply(&psi)?;
        states.push(psi.clone());
    }
    Ok(states)
}

/// Step count giving max ||H|| dt <= 0.05 (floored at `min_steps`).
pub fn default_steps(max_h_norm: f64, t_final: f64, min_steps: usize) -> usize {
    let n = (max_h_norm * t_final / 0.05).ceil() as usize;
    n.max(min_steps)
}

/// Fidelity of `psi` with the ground state of `h`.
pub fn gs_fidelity(h: &DenseOperator, psi: &StateVector) -> Result<f64> {
    let eig = herm_eig(h)?;
    let mut overlap = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..h.dim() {
        overlap += eig.vectors.get(i, 0).conj() * psi.amp(i);
    }
    Ok(overlap.norm_sqr().min(1.0))
}

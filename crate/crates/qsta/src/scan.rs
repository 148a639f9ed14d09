use qcore::{DenseOperator, StateVector};
use qmodels::{collective_spin_ops, lmg_hamiltonian, LinearRamp};
use rayon::prelude::*;

use crate::error::Result;
use crate::evolve::{evolve_schedule, gs_fidelity};

/// Fidelity surface of the two-parameter pulse family
/// f(t) = (exp(t^a) - b) / N applied to the collective-spin driving
/// operator Jx Jy + Jy Jx under a linear g-ramp.
#[derive(Debug, Clone)]
pub struct PulseScanResult {
    pub a_grid: Vec<f64>,
    pub b_grid: Vec<f64>,
    /// fidelity[i][j] for (a_grid[i], b_grid[j]).
    pub fidelity: Vec<Vec<f64>>,
}

impl PulseScanResult {
    pub fn max_fidelity(&self) -> f64 {
        self.fidelity
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Final ground-state fidelity under H(g(t)) + pulse(t) (Jx Jy + Jy Jx),
/// starting from the initial ground state.
pub fn lmg_pulse_fidelity(
    n: usize,
    pulse: impl Fn(f64) -> f64 + Sync,
    ramp: LinearRamp,
    n_steps: usize,
) -> Result<f64> {
    let ops = collective_spin_ops(n);
    let anti = ops
        .jx
        .matmul(&ops.jy)?
        .add(&ops.jy.matmul(&ops.jx)?)?
        .into_hermitian()?;
    let h_of_t = |t: f64| -> DenseOperator {
        lmg_hamiltonian(n, ramp.value(t))
            .unwrap()
            .add(&anti.scale_real(pulse(t)))
            .unwrap()
    };
    let h0 = lmg_hamiltonian(n, ramp.v0)?;
    let eig0 = qcore::herm_eig(&h0)?;
    let psi0 = StateVector::new((0..n + 1).map(|i| eig0.vectors.get(i, 0)).collect())?;
    let traj = evolve_schedule(h_of_t, &psi0, ramp.duration, n_steps)?;
    let h_final = lmg_hamiltonian(n, ramp.v1)?;
    gs_fidelity(&h_final, traj.last().unwrap()).map_err(Into::into)
}

/// Evaluate the pulse family on an (a, b) grid; cells run in parallel and
/// the surface layout is deterministic.
pub fn lmg_pulse_scan(
    n: usize,
    a_grid: &[f64],
    b_grid: &[f64],
    ramp: LinearRamp,
    n_steps: usize,
) -> Result<PulseScanResult> {
    let cells: Vec<(usize, usize)> = (0..a_grid.len())
        .flat_map(|i| (0..b_grid.len()).map(move |j| (i, j)))
        .collect();
    let values: Vec<((usize, usize), f64)> = cells
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (a_grid[i], b_grid[j]);
            let pulse = move |t: f64| (f64::exp(t.powf(a)) - b) / n as f64;
            let fid = lmg_pulse_fidelity(n, pulse, ramp, n_steps)
                .expect("pulse-scan cell evolution");
            ((i, j), fid)
        })
        .collect();
    let mut fidelity = vec![vec![0.0; b_grid.len()]; a_grid.len()];
    for ((i, j), f) in values {
        fidelity[i][j] = f;
    }
    Ok(PulseScanResult {
        a_grid: a_grid.to_vec(),
        b_grid: b_grid.to_vec(),
        fidelity,
    })
}

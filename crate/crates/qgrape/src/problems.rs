use qcore::{expm_herm, paulis, DenseOperator};
use qmodels::{
    collective_spin_ops, dicke_state, gate_control_derivative, gate_control_hamiltonian,
    lz_eigenstates,
};

use crate::control::PiecewiseControl;
use crate::error::Result;
use crate::optim::{multi_start, OptimReport, OptimSettings};
use crate::problem::{ControlProblem, Target};

/// State transfer between the field-dressed ground states at -nu0 and +nu0
/// of H(alpha) = Delta sigma_x + alpha sigma_z.
pub fn lz_state_problem(delta: f64, nu0: f64) -> ControlProblem {
    let eig_i = lz_eigenstates(delta, -nu0).expect("delta > 0");
    let eig_f = lz_eigenstates(delta, nu0).expect("delta > 0");
    ControlProblem {
        dim: 2,
        n_fields: 1,
        hamiltonian: Box::new(move |v| {
            paulis::sigma_x::<f64>()
                .scale_real(delta)
                .add(&paulis::sigma_z::<f64>().scale_real(v[0]))
                .unwrap()
                .into_hermitian()
                .unwrap()
        }),
        dhamiltonian: Box::new(|_, _| paulis::sigma_z::<f64>()),
        target: Target::State {
            initial: eig_i.ground,
            target: eig_f.ground,
        },
    }
}

/// Rotation axis of the target gate family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateAxis {
    X,
    Z,
}

/// Unitary control of the phase-only drive
/// H(alpha) = (Omega/2)(cos(alpha) sigma_x + sin(alpha) sigma_y) toward the
/// target exp(-i sigma_axis phi / 2).
pub fn gate_problem(omega: f64, axis: GateAxis, phi: f64) -> ControlProblem {
    let target_gen = match axis {
        GateAxis::X => paulis::sigma_x::<f64>(),
        GateAxis::Z => paulis::sigma_z::<f64>(),
    };
    let target = expm_herm(&target_gen, phi / 2.0).expect("Pauli is Hermitian");
    ControlProblem {
        dim: 2,
        n_fields: 1,
        hamiltonian: Box::new(move |v| gate_control_hamiltonian(omega, v[0])),
        dhamiltonian: Box::new(move |v, _| gate_control_derivative(omega, v[0])),
        target: Target::Unitary { target },
    }
}

/// Two-field collective-spin preparation problem: drive the fully polarized
/// state into the k-excitation symmetric state under
/// H = Omega_x Jx + Omega_y Jy + (beta/N) Jz^2.
pub fn dicke_problem(n: usize, beta: f64, k: usize) -> ControlProblem {
    let ops = collective_spin_ops(n);
    let jz2_over_n = ops
        .jz
        .matmul(&ops.jz)
        .unwrap()
        .scale_real(beta / n as f64);
    let jx = ops.jx.clone();
    let jy = ops.jy.clone();
    let jx_d = ops.jx;
    let jy_d = ops.jy;
    ControlProblem {
        dim: n + 1,
        n_fields: 2,
        hamiltonian: Box::new(move |v| {
            jx.scale_real(v[0])
                .add(&jy.scale_real(v[1]))
                .unwrap()
                .add(&jz2_over_n)
                .unwrap()
                .into_hermitian()
                .unwrap()
        }),
        dhamiltonian: Box::new(move |_, field| match field {
            0 => jx_d.clone(),
            _ => jy_d.clone(),
        }),
        target: Target::State {
            initial: dicke_state(n, 0).unwrap(),
            target: dicke_state(n, k).unwrap(),
        },
    }
}

/// Multi-start preparation run for the collective-spin problem.
#[derive(Debug, Clone)]
pub struct DickePrepReport {
    pub best: OptimReport,
    pub n: usize,
    pub k: usize,
}

/// Optimize the two-field preparation with M steps over duration `t_final`,
/// amplitudes bounded by `omega_max`.
pub fn dicke_prep(
    n: usize,
    k: usize,
    beta: f64,
    t_final: f64,
    m_steps: usize,
    omega_max: f64,
    n_seeds: usize,
    rng_seed: u64,
) -> Result<DickePrepReport> {
    let problem = dicke_problem(n, beta, k);
    let layout = PiecewiseControl::zeros(
        2,
        m_steps,
        t_final / m_steps as f64,
        vec![(-omega_max, omega_max); 2],
    );
    let best = multi_start(
        &problem,
        &layout,
        &OptimSettings::default(),
        n_seeds,
        rng_seed,
    )?;
    Ok(DickePrepReport { best, n, k })
}

//! End-to-end driving experiments: evolve a ground state along a ramp under
//! a chosen control variant and report instantaneous-ground-state fidelities.

use num_complex::Complex64;
use qcore::{expm_herm, herm_eig, pauli_to_dense, DenseOperator, PauliSum, StateVector};
use qmodels::{
    collective_spin_ops, ising_mixed_dh, ising_mixed_hamiltonian, ising_momentum_modes,
    ising_tf_hamiltonian, lmg_hamiltonian, lz_hamiltonian_at, Boundary, IsingMixedParams,
    LinearRamp,
};

use crate::agp::exact_agp;
use crate::cd::{cd_lz_coefficient, ising_gs_cd, ising_h_m, ising_momentum_cd_coeff};
use crate::error::Result;
use crate::evolve::gs_fidelity;
use crate::variational::{variational_agp_solve, mixed_ising_two_body_basis};

/// One recorded point of a fidelity trajectory.
#[derive(Debug, Clone, Copy)]
pub struct FidelityPoint {
    pub t: f64,
    pub fidelity: f64,
}

fn ground_state(h: &DenseOperator) -> Result<StateVector> {
    let eig = herm_eig(h)?;
    Ok(StateVector::new(
        (0..h.dim()).map(|i| eig.vectors.get(i, 0)).collect(),
    )?)
}

/// Two-level ramp with or without the exact driving term; records the
/// instantaneous ground-state fidelity at every step.
pub fn lz_cd_trajectory(
    delta: f64,
    nu: LinearRamp,
    n_steps: usize,
    with_cd: bool,
) -> Result<Vec<FidelityPoint>> {
    let nudot = nu.rate();
    let h_of_t = |t: f64| -> DenseOperator {
        let h = lz_hamiltonian_at(delta, nu.value(t));
        if with_cd {
            let coeff = cd_lz_coefficient(delta, nu.value(t), nudot);
            h.add(&qcore::paulis::sigma_y::<f64>().scale_real(coeff))
                .unwrap()
        } else {
            h
        }
    };
    let mut psi = ground_state(&lz_hamiltonian_at(delta, nu.v0))?;
    let dt = nu.duration / n_steps as f64;
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(FidelityPoint {
        t: 0.0,
        fidelity: 1.0,
    });
    for j in 0..n_steps {
        let t_mid = (j as f64 + 0.5) * dt;
        let u = expm_herm(&h_of_t(t_mid), dt)?;
        psi = u.apply(&psi)?;
        let t = (j + 1) as f64 * dt;
        let fid = gs_fidelity(&lz_hamiltonian_at(delta, nu.value(t)), &psi)?;
        out.push(FidelityPoint { t, fidelity: fid });
    }
    Ok(out)
}

/// Which part of the chain's ground-state driving term to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsingCdVariant {
    Bare,
    /// Only the range-m string family (with its h_m weight).
    RangeOnly(usize),
    Full,
}

fn ising_cd_term(n: usize, g: f64, gdot: f64, variant: IsingCdVariant) -> Result<PauliSum> {
    match variant {
        IsingCdVariant::Bare => Ok(PauliSum::zero(n)),
        IsingCdVariant::Full => ising_gs_cd(n, g, gdot),
        IsingCdVariant::RangeOnly(m) => {
            let full = ising_gs_cd(n, g, gdot)?;
            // keep only strings spanning range m: filter by weight via
            // rebuilding from h_m; simplest is to rebuild the family.
            let weight = if m == n / 2 { 0.5 } else { 1.0 };
            let keep = crate::cd::range_m_family(n, m)
                .scale_real(-gdot * weight * ising_h_m(n, m, g));
            // sanity: the kept family is a subset of the full term
            debug_assert!(keep
                .terms()
                .all(|(l, _)| full.coeff_of(l).norm() > 0.0 || gdot == 0.0));
            Ok(keep)
        }
    }
}

/// Dense spin-basis evolution of the periodic x-coupled chain under
/// H(g(t)) plus the selected driving variant.
pub fn ising_cd_trajectory(
    n: usize,
    g: LinearRamp,
    n_steps: usize,
    variant: IsingCdVariant,
    record_every: usize,
) -> Result<Vec<FidelityPoint>> {
    let gdot = g.rate();
    let h_at = |gv: f64| -> Result<DenseOperator> {
        Ok(pauli_to_dense(&ising_tf_hamiltonian(n, gv, Boundary::Periodic)?)?
            .into_hermitian()?)
    };
    let mut psi = ground_state(&h_at(g.v0)?)?;
    let dt = g.duration / n_steps as f64;
    let mut out = vec![FidelityPoint {
        t: 0.0,
        fidelity: 1.0,
    }];
    for j in 0..n_steps {
        let t_mid = (j as f64 + 0.5) * dt;
        let g_mid = g.value(t_mid);
        let mut h = ising_tf_hamiltonian(n, g_mid, Boundary::Periodic)?;
        h = h.add(&ising_cd_term(n, g_mid, gdot, variant)?)?;
        let hd = pauli_to_dense(&h)?.into_hermitian()?;
        psi = expm_herm(&hd, dt)?.apply(&psi)?;
        let step = j + 1;
        if step % record_every == 0 || step == n_steps {
            let t = step as f64 * dt;
            let fid = gs_fidelity(&h_at(g.value(t))?, &psi)?;
            out.push(FidelityPoint { t, fidelity: fid });
        }
    }
    Ok(out)
}

/// Momentum-space evolution of the same protocol: independent two-level
/// modes, total ground-state fidelity = product of per-mode fidelities.
pub fn ising_momentum_cd_trajectory(
    n: usize,
    g: LinearRamp,
    n_steps: usize,
    with_cd: bool,
    record_every: usize,
) -> Result<Vec<FidelityPoint>> {
    let gdot = g.rate();
    let (modes, _) = ising_momentum_modes(n, g.v0)?;
    let mut psis: Vec<StateVector> = modes
        .iter()
        .map(|m| ground_state(&m.hamiltonian(g.v0)))
        .collect::<Result<_>>()?;
    let dt = g.duration / n_steps as f64;
    let mut out = vec![FidelityPoint {
        t: 0.0,
        fidelity: 1.0,
    }];
    for j in 0..n_steps {
        let t_mid = (j as f64 + 0.5) * dt;
        let g_mid = g.value(t_mid);
        for (mode, psi) in modes.iter().zip(psis.iter_mut()) {
            let mut h = mode.hamiltonian(g_mid);
            if with_cd {
                let c = ising_momentum_cd_coeff(mode.k, g_mid, gdot);
                h = h.add(&qcore::paulis::sigma_y::<f64>().scale_real(c))?;
            }
            *psi = expm_herm(&h, dt)?.apply(psi)?;
        }
        let step = j + 1;
        if step % record_every == 0 || step == n_steps {
            let t = step as f64 * dt;
            let gv = g.value(t);
            let mut fid = 1.0;
            for (mode, psi) in modes.iter().zip(&psis) {
                fid *= gs_fidelity(&mode.hamiltonian(gv), psi)?;
            }
            out.push(FidelityPoint { t, fidelity: fid });
        }
    }
    Ok(out)
}

/// Driving variant for the collective-spin ramp.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmgDrive {
    Bare,
    /// Oscillator-approximation closed form (broken phase only).
    OscillatorCd,
    /// Spectral gauge potential evaluated at every step.
    ExactCd,
}

/// Final ground-state fidelity of the collective-spin ramp under the chosen
/// drive.
pub fn lmg_final_fidelity(
    n: usize,
    g: LinearRamp,
    n_steps: usize,
    drive: LmgDrive,
) -> Result<f64> {
    let gdot = g.rate();
    let ops = collective_spin_ops(n);
    let dh = ops.jz.scale_real(-2.0); // dH/dg
    let mut psi = ground_state(&lmg_hamiltonian(n, g.v0)?)?;
    let dt = g.duration / n_steps as f64;
    for j in 0..n_steps {
        let g_mid = g.value((j as f64 + 0.5) * dt);
        let mut h = lmg_hamiltonian(n, g_mid)?;
        match drive {
            LmgDrive::Bare => {}
            LmgDrive::OscillatorCd => {
                h = h.add(&crate::cd::lmg_gs_cd(n, g_mid, gdot)?)?;
            }
            LmgDrive::ExactCd => {
                let agp = exact_agp(&h, &dh, None)?;
                h = h.add(&agp.operator.scale_real(gdot))?;
            }
        }
        psi = expm_herm(&h.into_hermitian()?, dt)?.apply(&psi)?;
    }
    gs_fidelity(&lmg_hamiltonian(n, g.v1)?, &psi)
}

/// Ansatz order for the variational driving of the mixed-field chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcdOrder {
    Bare,
    OneBody,
    TwoBody,
}

/// Mixed-field chain driven by lambda(t) = t/T with couplings
/// J(lambda) = J, Z(lambda) = J, X(lambda) = 2 J lambda, evolved under the
/// variational driving term of the requested order. Returns the final
/// ground-state fidelity.
///
/// Boundary convention: single bond at N = 2, periodic ring for N >= 3.
pub fn mixed_ising_vcd_final_fidelity(
    n: usize,
    j: f64,
    t_final: f64,
    n_steps: usize,
    order: VcdOrder,
) -> Result<f64> {
    let boundary = if n == 2 {
        Boundary::Open
    } else {
        Boundary::Periodic
    };
    let p = IsingMixedParams::new(n, boundary)?;
    let couplings = |lambda: f64| (j, j, 2.0 * j * lambda);
    // lambda-derivatives of (J, Z, X)
    let (dj, dz, dx) = (0.0, 0.0, 2.0 * j);
    let lambda_dot = 1.0 / t_final;

    let basis_full = mixed_ising_two_body_basis(n);
    let basis: Vec<PauliSum> = match order {
        VcdOrder::Bare => vec![],
        VcdOrder::OneBody => vec![basis_full[0].clone()],
        VcdOrder::TwoBody => basis_full,
    };

    let h_pauli_at = |lambda: f64| {
        let (jv, zv, xv) = couplings(lambda);
        ising_mixed_hamiltonian(&p, jv, zv, xv)
    };

    let h0 = pauli_to_dense(&h_pauli_at(0.0))?.into_hermitian()?;
    let mut psi = ground_state(&h0)?;
    let dt = t_final / n_steps as f64;
    for step in 0..n_steps {
        let lambda = (step as f64 + 0.5) * dt / t_final;
        let mut h = h_pauli_at(lambda);
        if !basis.is_empty() {
            let dh = ising_mixed_dh(&p, dj, dz, dx);
            let sol = variational_agp_solve(&h, &dh, &basis)?;
            h = h.add(&sol.operator().scale_real(lambda_dot))?;
        }
        let hd = pauli_to_dense(&h)?.into_hermitian()?;
        psi = expm_herm(&hd, dt)?.apply(&psi)?;
    }
    let h_final = pauli_to_dense(&h_pauli_at(1.0))?.into_hermitian()?;
    gs_fidelity(&h_final, &psi)
}

/// Evolve eigenstate `index` of a driven dense model under H(t) + A(t),
/// where A is built from the full time derivative dH/dt (so the ramp rate
/// is already folded in), and return the worst instantaneous eigenstate
/// fidelity along the way.
pub fn eigenstate_tracking_worst_fidelity(
    h_of_t: impl Fn(f64) -> DenseOperator,
    dh_of_t: impl Fn(f64) -> DenseOperator,
    index: usize,
    t_final: f64,
    n_steps: usize,
) -> Result<f64> {
    let h0 = h_of_t(0.0);
    let eig0 = herm_eig(&h0)?;
    let dim = h0.dim();
    let mut psi = StateVector::new((0..dim).map(|i| eig0.vectors.get(i, index)).collect())?;
    let dt = t_final / n_steps as f64;
    let mut worst: f64 = 1.0;
    for j in 0..n_steps {
        let t_mid = (j as f64 + 0.5) * dt;
        let h = h_of_t(t_mid);
        let agp = exact_agp(&h, &dh_of_t(t_mid), None)?;
        let gen = h.add(&agp.operator)?.into_hermitian()?;
        psi = expm_herm(&gen, dt)?.apply(&psi)?;

        let t = (j + 1) as f64 * dt;
        let eig = herm_eig(&h_of_t(t))?;
        let mut overlap = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            overlap += eig.vectors.get(i, index).conj() * psi.amp(i);
        }
        worst = worst.min(overlap.norm_sqr());
    }
    Ok(worst)
}

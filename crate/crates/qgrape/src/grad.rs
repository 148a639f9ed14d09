use num_complex::Complex64;
use qcore::{expm_from_eig, herm_eig, DenseOperator, HermEig, StateVector};

use crate::control::PiecewiseControl;
use crate::error::Result;
use crate::problem::{ControlProblem, Target};

/// Cached propagation: per-step Hamiltonian eigendecompositions and
/// unitaries, reused by the gradient pass.
pub struct Propagation {
    pub step_eigs: Vec<HermEig<f64>>,
    pub step_unitaries: Vec<DenseOperator>,
    /// U(T) = U_M ... U_1.
    pub total: DenseOperator,
}

impl Propagation {
    pub fn final_state(&self, initial: &StateVector) -> Result<StateVector> {
        Ok(self.total.apply(initial)?)
    }
}

/// Build every step propagator U_j = exp(-i H_j dt) and their product.
pub fn propagate(problem: &ControlProblem, controls: &PiecewiseControl) -> Result<Propagation> {
    let m = controls.n_steps();
    let dt = controls.dt();
    let mut step_eigs = Vec::with_capacity(m);
    let mut step_unitaries = Vec::with_capacity(m);
    let mut total = DenseOperator::identity(problem.dim);
    for j in 0..m {
        let h = (problem.hamiltonian)(&controls.step_values(j));
        let eig = herm_eig(&h)?;
        let u = expm_from_eig(&eig, dt);
        total = u.matmul(&total)?;
        step_eigs.push(eig);
        step_unitaries.push(u);
    }
    Ok(Propagation {
        step_eigs,
        step_unitaries,
        total,
    })
}

/// Overlap z: <psi*|U(T)|psi0> for state control, Tr(U*^dag U(T))/d for
/// unitary control. The cost is J = 1 - |z|^2.
pub fn overlap_z(problem: &ControlProblem, prop: &Propagation) -> Result<Complex64> {
    match &problem.target {
        Target::State { initial, target } => {
            let fin = prop.total.apply(initial)?;
            Ok(target.inner(&fin)?)
        }
        Target::Unitary { target } => {
            let d = problem.dim as f64;
            Ok(target.adjoint().matmul(&prop.total)?.trace() / Complex64::new(d, 0.0))
        }
    }
}

/// Exact derivative of U = exp(-i H dt) along dH, from the spectral
/// decomposition of H: in the eigenbasis the (l, m) element is
/// <l|dH|m> * (-i dt e^{-i e_m dt}) when e_l = e_m (within |de| dt < 1e-8)
/// and <l|dH|m> * (e^{-i e_l dt} - e^{-i e_m dt}) / (e_l - e_m) otherwise.
pub fn du_dalpha(eig: &HermEig<f64>, dh: &DenseOperator, dt: f64) -> Result<DenseOperator> {
    let n = eig.values.len();
    let w = eig.vectors.adjoint().matmul(dh)?.matmul(&eig.vectors)?;
    let mut d = DenseOperator::zeros(n);
    for l in 0..n {
        for m in 0..n {
            let el = eig.values[l];
            let em = eig.values[m];
            let factor = if (el - em).abs() * dt < 1e-8 {
                Complex64::new(0.0, -dt) * Complex64::from_polar(1.0, -em * dt)
            } else {
                (Complex64::from_polar(1.0, -el * dt) - Complex64::from_polar(1.0, -em * dt))
                    / Complex64::new(el - em, 0.0)
            };
            d.set(l, m, w.get(l, m) * factor);
        }
    }
    Ok(eig.vectors.matmul(&d)?.matmul(&eig.vectors.adjoint())?)
}

/// Cost J = 1 - |z|^2 and its exact gradient over all K x M control entries
/// (flat layout matching `PiecewiseControl::values`). One forward and one
/// backward pass of cached products.
pub fn cost_and_grad(
    problem: &ControlProblem,
    controls: &PiecewiseControl,
) -> Result<(f64, Vec<f64>)> {
    let prop = propagate(problem, controls)?;
    let z = overlap_z(problem, &prop)?;
    let cost = 1.0 - z.norm_sqr();
    let m = controls.n_steps();
    let k_fields = controls.n_fields();
    let dt = controls.dt();
    let mut grad = vec![0.0f64; k_fields * m];

    match &problem.target {
        Target::State { initial, target } => {
            // forward states f_j = U_j ... U_1 |psi0>, j = 0..M
            let mut fwd = Vec::with_capacity(m + 1);
            fwd.push(initial.clone());
            for j in 0..m {
                let next = prop.step_unitaries[j].apply(fwd.last().unwrap())?;
                fwd.push(next);
            }
            // backward costates b_j = (U_{j+1,M})^dag |psi*>, j = M..0
            let mut bwd = vec![target.clone(); m + 1];
            for j in (0..m).rev() {
                bwd[j] = prop.step_unitaries[j].adjoint().apply(&bwd[j + 1])?;
            }
            // note bwd[j] = U_{j+1}^dag ... U_M^dag |psi*> shifted: b at
            // slot j means the costate to pair with dU_j at step j.
            for j in 0..m {
                let vals = controls.step_values(j);
                for k in 0..k_fields {
                    let dh = (problem.dhamiltonian)(&vals, k);
                    let du = du_dalpha(&prop.step_eigs[j], &dh, dt)?;
                    let du_f = du.apply_raw(&fwd[j])?;
                    let mut dz = Complex64::new(0.0, 0.0);
                    for (i, v) in du_f.iter().enumerate() {
                        dz += bwd[j + 1].amp(i).conj() * v;
                    }
                    grad[k * m + j] = -2.0 * (z.conj() * dz).re;
                }
            }
        }
        Target::Unitary { target } => {
            let d = problem.dim as f64;
            // forward products F_j = U_j ... U_1 (F_0 = 1)
            let mut fwd = Vec::with_capacity(m + 1);
            fwd.push(DenseOperator::identity(problem.dim));
            for j in 0..m {
                fwd.push(prop.step_unitaries[j].matmul(fwd.last().unwrap())?);
            }
            // backward products B_j = U_M ... U_{j+1} (B_M = 1)
            let mut bwd = vec![DenseOperator::identity(problem.dim); m + 1];
            for j in (0..m).rev() {
                bwd[j] = bwd[j + 1].matmul(&prop.step_unitaries[j])?;
            }
            let udag = target.adjoint();
            for j in 0..m {
                let vals = controls.step_values(j);
                // G_j = F_{j-1} U*^dag B_{j+1...}: dz = Tr(U*^dag B dU F)/d
                let left = udag.matmul(&bwd[j + 1])?;
                for k in 0..k_fields {
                    let dh = (problem.dhamiltonian)(&vals, k);
                    let du = du_dalpha(&prop.step_eigs[j], &dh, dt)?;
                    let dz = left.matmul(&du)?.matmul(&fwd[j])?.trace()
                        / Complex64::new(d, 0.0);
                    grad[k * m + j] = -2.0 * (z.conj() * dz).re;
                }
            }
        }
    }
    Ok((cost, grad))
}

/// Cost only (used by line searches).
pub fn cost(problem: &ControlProblem, controls: &PiecewiseControl) -> Result<f64> {
    let prop = propagate(problem, controls)?;
    let z = overlap_z(problem, &prop)?;
    Ok(1.0 - z.norm_sqr())
}

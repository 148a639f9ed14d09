use num_complex::Complex64;
use qcore::{DenseOperator, StateVector};

use crate::error::{ModelError, Result};

/// Collective spin operators in the maximal-spin sector J = N/2.
///
/// Basis vectors are ordered by descending J_z eigenvalue, so index k
/// carries J_z = N/2 - k and index 0 is the fully polarized state.
#[derive(Debug, Clone)]
pub struct CollectiveSpinModel {
    pub n_particles: usize,
    pub jx: DenseOperator,
    pub jy: DenseOperator,
    pub jz: DenseOperator,
}

impl CollectiveSpinModel {
    pub fn dim(&self) -> usize {
        self.n_particles + 1
    }

    /// Total-spin Casimir eigenvalue J(J+1).
    pub fn casimir(&self) -> f64 {
        let j = self.n_particles as f64 / 2.0;
        j * (j + 1.0)
    }
}

pub fn collective_spin_ops(n: usize) -> CollectiveSpinModel {
    assert!(n >= 1, "need at least one particle");
    let dim = n + 1;
    let j = n as f64 / 2.0;

    // J+ |J,m> = sqrt(J(J+1) - m(m+1)) |J,m+1>; index k has m = J - k.
    let mut jplus = DenseOperator::zeros(dim);
    for k in 1..dim {
        let m = j - k as f64; // raising from index k to k-1
        let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        jplus.set(k - 1, k, Complex64::new(amp, 0.0));
    }
    let jminus = jplus.adjoint();

    let jx = jplus
        .add(&jminus)
        .unwrap()
        .scale(Complex64::new(0.5, 0.0))
        .into_hermitian()
        .unwrap();
    let jy = jplus
        .sub(&jminus)
        .unwrap()
        .scale(Complex64::new(0.0, -0.5))
        .into_hermitian()
        .unwrap();
    let mut jz = DenseOperator::zeros(dim);
    for k in 0..dim {
        jz.set(k, k, Complex64::new(j - k as f64, 0.0));
    }
    let jz = jz.into_hermitian().unwrap();

    CollectiveSpinModel {
        n_particles: n,
        jx,
        jy,
        jz,
    }
}

/// All-to-all Ising model in collective form:
/// H = -(2/N) J_x^2 - 2 g J_z + 1/2.
///
/// The constant 1/2 term only shifts the spectrum; it is kept so energies
/// match the collective rewriting of the pairwise model exactly.
pub fn lmg_hamiltonian(n: usize, g: f64) -> Result<DenseOperator> {
    if n < 2 {
        return Err(ModelError::InvalidParameter(format!(
            "need at least 2 particles, got {n}"
        )));
    }
    let ops = collective_spin_ops(n);
    let jx2 = ops.jx.matmul(&ops.jx).unwrap();
    let h = jx2
        .scale_real(-2.0 / n as f64)
        .add(&ops.jz.scale_real(-2.0 * g))
        .unwrap()
        .add(&DenseOperator::identity(n + 1).scale_real(0.5))
        .unwrap();
    h.into_hermitian().map_err(|e| {
        ModelError::InvalidParameter(format!("collective Hamiltonian not Hermitian: {e}"))
    })
}

/// Symmetric k-excitation state |D_k>: the collective basis vector with
/// J_z eigenvalue N/2 - k.
pub fn dicke_state(n: usize, k: usize) -> Result<StateVector> {
    if k > n {
        return Err(ModelError::ExcitationOutOfRange { k, n });
    }
    Ok(StateVector::basis(n + 1, k))
}

/// Collective control Hamiltonian
/// H = Omega_x J_x + Omega_y J_y + (beta/N) J_z^2.
pub fn dicke_hamiltonian(n: usize, beta: f64, omega_x: f64, omega_y: f64) -> DenseOperator {
    let ops = collective_spin_ops(n);
    let jz2 = ops.jz.matmul(&ops.jz).unwrap();
    ops.jx
        .scale_real(omega_x)
        .add(&ops.jy.scale_real(omega_y))
        .unwrap()
        .add(&jz2.scale_real(beta / n as f64))
        .unwrap()
        .into_hermitian()
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use qcore::herm_eig;

    #[test]
    fn spin_one_jz() {
        let ops = collective_spin_ops(2);
        assert_abs_diff_eq!(ops.jz.get(0, 0).re, 1.0);
        assert_abs_diff_eq!(ops.jz.get(1, 1).re, 0.0);
        assert_abs_diff_eq!(ops.jz.get(2, 2).re, -1.0);
    }

    #[test]
    fn commutator_and_casimir_invariants() {
        for &n in &[2usize, 10, 50] {
            let ops = collective_spin_ops(n);
            // [Jx, Jy] = i Jz
            let comm = ops
                .jx
                .matmul(&ops.jy)
                .unwrap()
                .sub(&ops.jy.matmul(&ops.jx).unwrap())
                .unwrap();
            let want = ops.jz.scale(Complex64::new(0.0, 1.0));
            assert!(comm.sub(&want).unwrap().max_abs_entry() < 1e-10);

            // Jx^2 + Jy^2 + Jz^2 = J(J+1) 1
            let j2 = ops
                .jx
                .matmul(&ops.jx)
                .unwrap()
                .add(&ops.jy.matmul(&ops.jy).unwrap())
                .unwrap()
                .add(&ops.jz.matmul(&ops.jz).unwrap())
                .unwrap();
            let want = DenseOperator::identity(n + 1).scale_real(ops.casimir());
            assert!(j2.sub(&want).unwrap().max_abs_entry() < 1e-8);
        }
    }

    #[test]
    fn lmg_field_dominated_ground_state() {
        // g -> infinity: ground state is the maximal-J_z basis vector
        let h = lmg_hamiltonian(8, 500.0).unwrap();
        let eig = herm_eig(&h).unwrap();
        assert!(eig.vectors.get(0, 0).norm() > 1.0 - 1e-4);
    }

    #[test]
    fn lmg_gap_matches_oscillator_frequency() {
        // bottom gap ~ 2 sqrt(g(g-1)) for large N; 5% tolerance at N=50
        let g = 2.0;
        let h = lmg_hamiltonian(50, g).unwrap();
        let eig = herm_eig(&h).unwrap();
        let gap = eig.values[1] - eig.values[0];
        let want = 2.0 * (g * (g - 1.0)).sqrt();
        assert!(
            (gap - want).abs() / want < 0.05,
            "gap {gap} vs oscillator {want}"
        );
    }

    #[test]
    fn dicke_states_are_jz_eigenstates() {
        let ops = collective_spin_ops(4);
        let d1 = dicke_state(4, 1).unwrap();
        let jd = ops.jz.apply_raw(&d1).unwrap();
        // J_z |D_1> = (4/2 - 1) |D_1> = 1 |D_1>
        for (i, v) in jd.iter().enumerate() {
            assert_abs_diff_eq!((v - d1.amp(i) * 1.0).norm(), 0.0, epsilon = 1e-14);
        }
        // orthonormality
        let d2 = dicke_state(4, 2).unwrap();
        assert!(d1.inner(&d2).unwrap().norm() < 1e-15);
        // top of ladder
        let d0 = dicke_state(4, 0).unwrap();
        assert_abs_diff_eq!(d0.amp(0).re, 1.0);
        // out of range
        assert!(dicke_state(4, 5).is_err());
    }

    #[test]
    fn dicke_hamiltonian_is_hermitian_and_conserves_casimir() {
        let h = dicke_hamiltonian(6, 1.0, 0.4, -0.9);
        assert!(h.asymmetry() < 1e-12);
    }
}

use num_complex::Complex64;
use qcore::{paulis, DenseOperator, StateVector};

use crate::error::{ModelError, Result};
use crate::schedule::LinearRamp;

/// Two-level avoided-crossing model H(t) = Delta sigma_x + nu(t) sigma_z.
#[derive(Debug, Clone, Copy)]
pub struct LZParams {
    pub delta: f64,
    pub nu: LinearRamp,
}

impl LZParams {
    pub fn new(delta: f64, nu: LinearRamp) -> Result<Self> {
        if delta <= 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "delta must be positive, got {delta}"
            )));
        }
        Ok(Self { delta, nu })
    }

    pub fn duration(&self) -> f64 {
        self.nu.duration
    }
}

pub fn lz_hamiltonian(p: &LZParams, t: f64) -> DenseOperator {
    lz_hamiltonian_at(p.delta, p.nu.value(t))
}

pub fn lz_hamiltonian_at(delta: f64, nu: f64) -> DenseOperator {
    paulis::sigma_x::<f64>()
        .scale_real(delta)
        .add(&paulis::sigma_z::<f64>().scale_real(nu))
        .unwrap()
        .into_hermitian()
        .unwrap()
}

/// Instantaneous eigenpair of the two-level model.
#[derive(Debug, Clone)]
pub struct LZEigen {
    pub ground: StateVector,
    pub excited: StateVector,
    pub e_ground: f64,
    pub e_excited: f64,
}

/// Closed-form eigenstates of Delta sigma_x + nu sigma_z.
///
/// With theta = atan2(Delta, nu), the ground state is
/// (sin(theta/2), -cos(theta/2)) at energy -sqrt(Delta^2 + nu^2); as
/// nu -> -inf it tends to |0> and as nu -> +inf to |1>.
pub fn lz_eigenstates(delta: f64, nu: f64) -> Result<LZEigen> {
    if delta <= 0.0 {
        return Err(ModelError::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let theta = delta.atan2(nu);
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let e = (delta * delta + nu * nu).sqrt();
    let ground = StateVector::new(vec![
        Complex64::new(s, 0.0),
        Complex64::new(-c, 0.0),
    ])
    .unwrap();
    let excited = StateVector::new(vec![Complex64::new(c, 0.0), Complex64::new(s, 0.0)]).unwrap();
    Ok(LZEigen {
        ground,
        excited,
        e_ground: -e,
        e_excited: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use qcore::fidelity_state;

    fn eigen_residual(delta: f64, nu: f64) -> f64 {
        let h = lz_hamiltonian_at(delta, nu);
        let e = lz_eigenstates(delta, nu).unwrap();
        let hg = h.apply_raw(&e.ground).unwrap();
        let mut worst = 0.0f64;
        for (i, v) in hg.iter().enumerate() {
            worst = worst.max((v - e.ground.amp(i) * e.e_ground).norm());
        }
        let he = h.apply_raw(&e.excited).unwrap();
        for (i, v) in he.iter().enumerate() {
            worst = worst.max((v - e.excited.amp(i) * e.e_excited).norm());
        }
        worst
    }

    #[test]
    fn symmetric_point() {
        let e = lz_eigenstates(1.0, 0.0).unwrap();
        assert_abs_diff_eq!(e.e_ground, -1.0, epsilon = 1e-15);
        assert!(eigen_residual(1.0, 0.0) < 1e-14);
    }

    #[test]
    fn large_negative_field_ground_is_up() {
        // ground state of Delta sigma_x + nu sigma_z tends to |0> as nu -> -inf
        let e = lz_eigenstates(1.0, -1e9).unwrap();
        let up = StateVector::basis(2, 0);
        assert!(fidelity_state(&e.ground, &up).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn generic_point_energy_and_residual() {
        let e = lz_eigenstates(1.0, 2.0).unwrap();
        assert_abs_diff_eq!(e.e_ground, -5.0f64.sqrt(), epsilon = 1e-14);
        for &(d, nu) in &[(1.0, 2.0), (0.3, -4.0), (2.5, 0.01)] {
            assert!(eigen_residual(d, nu) < 1e-12);
        }
    }

    #[test]
    fn ground_and_excited_orthogonal() {
        let e = lz_eigenstates(0.7, 1.3).unwrap();
        assert!(fidelity_state(&e.ground, &e.excited).unwrap() < 1e-28);
    }
}

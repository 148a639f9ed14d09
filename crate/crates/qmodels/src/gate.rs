use qcore::{paulis, DenseOperator};

/// Phase-controlled drive H(alpha) = (Omega/2)(cos(alpha) sigma_x + sin(alpha) sigma_y).
///
/// The control enters nonlinearly; the energy is bounded by Omega/2
/// regardless of the field value.
pub fn gate_control_hamiltonian(omega: f64, alpha: f64) -> DenseOperator {
    paulis::sigma_x::<f64>()
        .scale_real(0.5 * omega * alpha.cos())
        .add(&paulis::sigma_y::<f64>().scale_real(0.5 * omega * alpha.sin()))
        .unwrap()
        .into_hermitian()
        .unwrap()
}

/// dH/dalpha = (Omega/2)(-sin(alpha) sigma_x + cos(alpha) sigma_y).
pub fn gate_control_derivative(omega: f64, alpha: f64) -> DenseOperator {
    paulis::sigma_x::<f64>()
        .scale_real(-0.5 * omega * alpha.sin())
        .add(&paulis::sigma_y::<f64>().scale_real(0.5 * omega * alpha.cos()))
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
    fn axis_limits() {
        let hx = gate_control_hamiltonian(2.0, 0.0);
        assert!(hx.sub(&paulis::sigma_x::<f64>()).unwrap().max_abs_entry() < 1e-15);
        let hy = gate_control_hamiltonian(2.0, std::f64::consts::FRAC_PI_2);
        assert!(hy.sub(&paulis::sigma_y::<f64>()).unwrap().max_abs_entry() < 1e-15);
    }

    #[test]
    fn eigenvalues_bounded_by_half_omega() {
        let omega = 1.7;
        for i in 0..12 {
            let alpha = i as f64 * 0.55 - 3.0;
            let eig = herm_eig(&gate_control_hamiltonian(omega, alpha)).unwrap();
            assert_abs_diff_eq!(eig.values[0], -omega / 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(eig.values[1], omega / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let omega = 1.3;
        let alpha = 0.77;
        let eps = 1e-6;
        let fd = gate_control_hamiltonian(omega, alpha + eps)
            .sub(&gate_control_hamiltonian(omega, alpha - eps))
            .unwrap()
            .scale_real(0.5 / eps);
        let an = gate_control_derivative(omega, alpha);
        assert!(fd.sub(&an).unwrap().max_abs_entry() < 1e-9);
    }
}

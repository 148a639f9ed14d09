use num_complex::Complex64;
use qcore::{paulis, DenseOperator, PauliOp, PauliSum};

use crate::error::{ModelError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn bond_range(n: usize, boundary: Boundary) -> usize {
    match boundary {
        Boundary::Periodic => n,
        Boundary::Open => n - 1,
    }
}

/// Transverse-field Ising chain, x-coupled: H = -sum_j X_j X_{j+1} - g sum_j Z_j.
///
/// Periodic boundaries wrap site N to site 1 (for N = 2 the wrap doubles the
/// single bond).
pub fn ising_tf_hamiltonian(n: usize, g: f64, boundary: Boundary) -> Result<PauliSum> {
    if n < 2 {
        return Err(ModelError::InvalidParameter(format!(
            "need at least 2 sites, got {n}"
        )));
    }
    let mut h = PauliSum::zero(n);
    for j in 0..bond_range(n, boundary) {
        let k = (j + 1) % n;
        h = h
            .add(&PauliSum::term(
                n,
                -one(),
                &[(j, PauliOp::X), (k, PauliOp::X)],
            ))
            .unwrap();
    }
    for j in 0..n {
        h = h
            .add(&PauliSum::term(n, -one() * g, &[(j, PauliOp::Z)]))
            .unwrap();
    }
    Ok(h)
}

/// Mixed-field (non-integrable) Ising chain, z-coupled:
/// H = -J sum_j Z_j Z_{j+1} - Z sum_j Z_j + X sum_j X_j.
///
/// `j`, `z`, `x` are the coupling values at the current drive parameter.
#[derive(Debug, Clone, Copy)]
pub struct IsingMixedParams {
    pub n_sites: usize,
    pub boundary: Boundary,
}

impl IsingMixedParams {
    pub fn new(n_sites: usize, boundary: Boundary) -> Result<Self> {
        if n_sites < 2 {
            return Err(ModelError::InvalidParameter(format!(
                "need at least 2 sites, got {n_sites}"
            )));
        }
        Ok(Self { n_sites, boundary })
    }
}

pub fn ising_mixed_hamiltonian(p: &IsingMixedParams, j: f64, z: f64, x: f64) -> PauliSum {
    let n = p.n_sites;
    let mut h = PauliSum::zero(n);
    for s in 0..bond_range(n, p.boundary) {
        let t = (s + 1) % n;
        h = h
            .add(&PauliSum::term(
                n,
                -one() * j,
                &[(s, PauliOp::Z), (t, PauliOp::Z)],
            ))
            .unwrap();
    }
    for s in 0..n {
        h = h
            .add(&PauliSum::term(n, -one() * z, &[(s, PauliOp::Z)]))
            .unwrap();
        h = h
            .add(&PauliSum::term(n, one() * x, &[(s, PauliOp::X)]))
            .unwrap();
    }
    h
}

/// Drive derivative of the mixed-field chain for coupling rates
/// (dJ, dZ, dX): dH = -dJ sum ZZ - dZ sum Z + dX sum X.
pub fn ising_mixed_dh(p: &IsingMixedParams, dj: f64, dz: f64, dx: f64) -> PauliSum {
    ising_mixed_hamiltonian(p, dj, dz, dx)
}

/// Positive-parity (anti-periodic) momentum mode of the x-coupled chain.
///
/// The chain block-diagonalizes into independent two-level systems with
/// H_k = 2 [(g - cos k) sigma_z + sin k sigma_x].
#[derive(Debug, Clone, Copy)]
pub struct MomentumMode {
    pub k: f64,
}

impl MomentumMode {
    /// Effective gap parameter: 2 sin k.
    pub fn delta(&self) -> f64 {
        2.0 * self.k.sin()
    }

    /// Effective field: 2g - 2 cos k.
    pub fn nu(&self, g: f64) -> f64 {
        2.0 * g - 2.0 * self.k.cos()
    }

    /// Two-level Hamiltonian of the mode at field g.
    pub fn hamiltonian(&self, g: f64) -> DenseOperator {
        paulis::sigma_z::<f64>()
            .scale_real(self.nu(g))
            .add(&paulis::sigma_x::<f64>().scale_real(self.delta()))
            .unwrap()
            .into_hermitian()
            .unwrap()
    }

    pub fn ground_energy(&self, g: f64) -> f64 {
        -(self.delta().powi(2) + self.nu(g).powi(2)).sqrt()
    }
}

/// Momentum modes k = (2m - 1) pi / N, m = 1..N/2 of the positive-parity
/// sector. The construction drops no constant offset: the sum of per-mode
/// ground energies equals the even-sector dense ground energy exactly, and
/// the returned offset is zero by that bookkeeping.
pub fn ising_momentum_modes(n: usize, _g: f64) -> Result<(Vec<MomentumMode>, f64)> {
    if n % 2 != 0 || n < 2 {
        return Err(ModelError::OddSiteCount(n));
    }
    let modes = (1..=n / 2)
        .map(|m| MomentumMode {
            k: (2.0 * m as f64 - 1.0) * std::f64::consts::PI / n as f64,
        })
        .collect();
    Ok((modes, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use qcore::{herm_eig, pauli_to_dense};

    #[test]
    fn tf_open_two_sites() {
        // -X1X2 - g Z1 - g Z2
        let h = ising_tf_hamiltonian(2, 0.7, Boundary::Open).unwrap();
        assert_eq!(h.n_terms(), 3);
        assert_abs_diff_eq!(h.coeff_of(&[PauliOp::X, PauliOp::X]).re, -1.0);
        assert_abs_diff_eq!(h.coeff_of(&[PauliOp::Z, PauliOp::I]).re, -0.7);
        assert_abs_diff_eq!(h.coeff_of(&[PauliOp::I, PauliOp::Z]).re, -0.7);
    }

    #[test]
    fn tf_periodic_three_sites_term_count() {
        let h = ising_tf_hamiltonian(3, 1.3, Boundary::Periodic).unwrap();
        assert_eq!(h.n_terms(), 6); // 3 bonds + 3 fields
    }

    #[test]
    fn tf_periodic_two_sites_doubles_bond() {
        let h = ising_tf_hamiltonian(2, 1.0, Boundary::Periodic).unwrap();
        assert_abs_diff_eq!(h.coeff_of(&[PauliOp::X, PauliOp::X]).re, -2.0);
    }

    #[test]
    fn tf_paramagnetic_limit() {
        // ground energy -> -gN + O(1/g)
        let g = 200.0;
        let h = ising_tf_hamiltonian(4, g, Boundary::Periodic).unwrap();
        let dense = pauli_to_dense(&h).unwrap().into_hermitian().unwrap();
        let eig = herm_eig(&dense).unwrap();
        assert!((eig.values[0] + g * 4.0).abs() < 0.1);
    }

    #[test]
    fn mixed_classical_point_ground_all_up() {
        // J=1, Z=1, X=0: diagonal; ground = |00..0>
        let p = IsingMixedParams::new(3, Boundary::Periodic).unwrap();
        let h = ising_mixed_hamiltonian(&p, 1.0, 1.0, 0.0);
        let dense = pauli_to_dense(&h).unwrap().into_hermitian().unwrap();
        let eig = herm_eig(&dense).unwrap();
        // |000> has energy -3J - 3Z = -6
        assert_abs_diff_eq!(eig.values[0], -6.0, epsilon = 1e-12);
        assert!(eig.vectors.get(0, 0).norm() > 1.0 - 1e-10);
    }

    #[test]
    fn mixed_x_coefficient_at_half_lambda() {
        // X(lambda) = 2 J lambda at lambda = 1/2 -> coefficient 1 per site
        let p = IsingMixedParams::new(2, Boundary::Open).unwrap();
        let h = ising_mixed_hamiltonian(&p, 1.0, 1.0, 2.0 * 0.5);
        assert_abs_diff_eq!(h.coeff_of(&[PauliOp::X, PauliOp::I]).re, 1.0);
    }

    #[test]
    fn mixed_drive_derivative_is_x_only() {
        // J, Z constant, X = 2 J lambda -> dH = +2J sum X
        let p = IsingMixedParams::new(3, Boundary::Periodic).unwrap();
        let dh = ising_mixed_dh(&p, 0.0, 0.0, 2.0);
        assert_eq!(dh.n_terms(), 3);
        assert_abs_diff_eq!(
            dh.coeff_of(&[PauliOp::X, PauliOp::I, PauliOp::I]).re,
            2.0
        );
    }

    #[test]
    fn momentum_mode_values() {
        let (modes, offset) = ising_momentum_modes(4, 1.0).unwrap();
        assert_eq!(modes.len(), 2);
        assert_abs_diff_eq!(modes[0].k, std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(
            modes[1].k,
            3.0 * std::f64::consts::FRAC_PI_4,
            epsilon = 1e-15
        );
        assert_eq!(offset, 0.0);
        assert!(ising_momentum_modes(5, 1.0).is_err());
    }

    #[test]
    fn momentum_gap_near_criticality() {
        // at g = 1 the per-mode gap is 2 sqrt(2 - 2 cos k) ~ 2k for small k
        let (modes, _) = ising_momentum_modes(64, 1.0).unwrap();
        let m = &modes[0];
        let gap = 2.0 * (m.delta().powi(2) + m.nu(1.0).powi(2)).sqrt() / 2.0;
        assert_abs_diff_eq!(gap, 2.0 * m.k, epsilon = 1e-3);
    }

    #[test]
    fn momentum_ground_energy_matches_dense() {
        // Sum of per-mode ground energies equals the dense ground energy of
        // the periodic chain (the ground state sits in the even-parity
        // sector) within 1e-10.
        for &(n, g) in &[(4usize, 0.5), (4, 1.0), (4, 2.0), (6, 0.5), (6, 1.0), (6, 2.0)] {
            let (modes, offset) = ising_momentum_modes(n, g).unwrap();
            let e_modes: f64 = modes.iter().map(|m| m.ground_energy(g)).sum::<f64>() + offset;
            let h = ising_tf_hamiltonian(n, g, Boundary::Periodic).unwrap();
            let dense = pauli_to_dense(&h).unwrap().into_hermitian().unwrap();
            let eig = herm_eig(&dense).unwrap();
            assert_abs_diff_eq!(e_modes, eig.values[0], epsilon = 1e-9);
        }
    }
}

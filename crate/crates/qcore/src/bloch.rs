use crate::error::{QcoreError, Result};
use crate::scalar::{Cx, Scalar};
use crate::state::StateVectorG;

/// Spherical coordinates of a qubit state: theta in [0, pi], phi in [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochCoordsG<S: Scalar> {
    pub theta: S,
    pub phi: S,
}

impl<S: Scalar> BlochCoordsG<S> {
    pub fn new(theta: S, phi: S) -> Self {
        Self { theta, phi }
    }

    /// Cartesian unit vector (sin t cos p, sin t sin p, cos t).
    pub fn unit_vector(&self) -> [S; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }
}

/// theta = 2 arccos|psi_1|, phi = arg(psi_2) - arg(psi_1) mod 2pi.
pub fn bloch_from_state<S: Scalar>(psi: &StateVectorG<S>) -> Result<BlochCoordsG<S>> {
    if psi.dim() != 2 {
        return Err(QcoreError::DimMismatch {
            expected: 2,
            got: psi.dim(),
        });
    }
    let a = psi.amp(0);
    let b = psi.amp(1);
    let mag = a.norm().min(S::one());
    let theta = S::cst(2.0) * mag.acos();
    let mut phi = b.arg() - a.arg();
    let tau = S::cst(2.0) * S::PI();
    while phi < S::zero() {
        phi = phi + tau;
    }
    while phi >= tau {
        phi = phi - tau;
    }
    // Poles: phi is undefined; fix the representative to 0.
    if theta == S::zero() || theta == S::PI() {
        phi = S::zero();
    }
    Ok(BlochCoordsG { theta, phi })
}

/// (cos(theta/2), e^{i phi} sin(theta/2)).
pub fn state_from_bloch<S: Scalar>(b: &BlochCoordsG<S>) -> StateVectorG<S> {
    let half = b.theta * S::cst(0.5);
    let amps = vec![
        Cx::new(half.cos(), S::zero()),
        Cx::from_polar(half.sin(), b.phi),
    ];
    StateVectorG::from_unnormalized(amps).expect("nonzero")
}

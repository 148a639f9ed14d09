//! Dense 2x2 Pauli matrices and small helpers used across the workspace.

use crate::op::DenseOperatorG;
use crate::scalar::{c, Scalar};

pub fn sigma_x<S: Scalar>() -> DenseOperatorG<S> {
    DenseOperatorG::hermitian(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
}

pub fn sigma_y<S: Scalar>() -> DenseOperatorG<S> {
    DenseOperatorG::hermitian(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
}

pub fn sigma_z<S: Scalar>() -> DenseOperatorG<S> {
    DenseOperatorG::hermitian(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]).unwrap()
}

/// a*sigma_x + b*sigma_y + c*sigma_z (Hermitian for real coefficients).
pub fn pauli_vector<S: Scalar>(a: S, b: S, cz: S) -> DenseOperatorG<S> {
    let x = sigma_x::<S>().scale_real(a);
    let y = sigma_y::<S>().scale_real(b);
    let z = sigma_z::<S>().scale_real(cz);
    x.add(&y).unwrap().add(&z).unwrap()
}

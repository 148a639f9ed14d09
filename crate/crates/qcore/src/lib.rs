//! Dense complex linear algebra for small Hilbert spaces plus an exact
//! symbolic Pauli-string algebra.
//!
//! The math is generic over the real scalar type via [`Scalar`]
//! (`f32`/`f64`); the `f64` aliases at the crate root are what the rest of
//! the workspace uses. All types are immutable-after-construction values and
//! all operations are pure.

pub mod bloch;
pub mod eig;
pub mod error;
pub mod op;
pub mod pauli;
pub mod paulis;
pub mod scalar;
pub mod state;

pub use bloch::{bloch_from_state, state_from_bloch, BlochCoordsG};
pub use eig::{expm_from_eig, expm_herm, herm_eig, herm_function, HermEig};
pub use error::{QcoreError, Result};
pub use op::{fidelity_unitary, kron, project_and_renormalize, DenseOperatorG};
pub use pauli::{
    pauli_commutator, pauli_hs_inner, pauli_mul, pauli_to_dense, pauli_to_dense_capped, PauliOp,
    PauliStringG, PauliSumG, DENSE_SITE_CAP, PRUNE_TOL,
};
pub use scalar::{Cx, Scalar};
pub use state::{fidelity_state, StateVectorG};

/// Working real scalar for the toolkit.
pub type Real = f64;
/// Working complex scalar.
pub type C64 = num_complex::Complex64;

pub type StateVector = StateVectorG<Real>;
pub type DenseOperator = DenseOperatorG<Real>;
pub type BlochCoords = BlochCoordsG<Real>;
pub type PauliString = PauliStringG<Real>;
pub type PauliSum = PauliSumG<Real>;

//! Constructors for the Hamiltonian families and target states used across
//! the toolkit: the two-level avoided-crossing model, transverse-field and
//! mixed-field Ising chains (with their momentum-space reduction), the
//! all-to-all collective-spin model, Dicke states, and the phase-controlled
//! gate Hamiltonian.

pub mod collective;
pub mod error;
pub mod gate;
pub mod ising;
pub mod lz;
pub mod schedule;

pub use collective::{collective_spin_ops, dicke_hamiltonian, dicke_state, lmg_hamiltonian, CollectiveSpinModel};
pub use error::ModelError;
pub use gate::{gate_control_derivative, gate_control_hamiltonian};
pub use ising::{
    ising_mixed_dh, ising_mixed_hamiltonian, ising_momentum_modes, ising_tf_hamiltonian, Boundary,
    IsingMixedParams, MomentumMode,
};
pub use lz::{lz_eigenstates, lz_hamiltonian, lz_hamiltonian_at, LZEigen, LZParams};
pub use schedule::LinearRamp;

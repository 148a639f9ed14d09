//! Exact and approximate counterdiabatic control: spectral adiabatic gauge
//! potential, closed-form driving terms for the two-level, Ising, and
//! collective-spin models, the variational gauge-potential solver with its
//! commutator-ansatz basis generator, schedule propagation, and the
//! eigenstate phase-accumulation ledger.

pub mod agp;
pub mod cd;
pub mod drivers;
pub mod error;
pub mod evolve;
pub mod phases;
pub mod scan;
pub mod variational;

pub use agp::{exact_agp, AGPSpectral};
pub use cd::{
    cd_lz_coefficient, ising_gs_cd, ising_h_m, ising_momentum_cd, ising_momentum_cd_coeff,
    lmg_gs_cd, range_m_family,
};
pub use drivers::{
    eigenstate_tracking_worst_fidelity, ising_cd_trajectory, ising_momentum_cd_trajectory,
    lmg_final_fidelity, lz_cd_trajectory, mixed_ising_vcd_final_fidelity, FidelityPoint,
    IsingCdVariant, LmgDrive, VcdOrder,
};
pub use error::StaError;
pub use evolve::{default_steps, evolve_schedule, gs_fidelity};
pub use phases::{phase_distance, phase_ledger, LZCircleLoop, PhaseGenerator, PhaseLedger};
pub use scan::{lmg_pulse_fidelity, lmg_pulse_scan, PulseScanResult};
pub use variational::{
    commutator_ansatz_basis, vcd_ising_closed_form, variational_agp_solve, VariationalAnsatz,
};

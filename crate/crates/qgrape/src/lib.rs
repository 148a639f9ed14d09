//! Gradient-based pulse engineering: piecewise-constant controls, exact
//! spectral gradients of the step propagators, a bounded limited-memory
//! quasi-Newton optimizer with multi-start, and warm-started minimum-time
//! sweeps.

pub mod control;
pub mod error;
pub mod grad;
pub mod optim;
pub mod problem;
pub mod problems;
pub mod qsl;

pub use control::PiecewiseControl;
pub use error::GrapeError;
pub use grad::{cost_and_grad, du_dalpha, overlap_z, propagate, Propagation};
pub use optim::{multi_start, optimize, OptimReport, OptimSettings};
pub use problem::{ControlProblem, Target};
pub use problems::{dicke_prep, dicke_problem, gate_problem, lz_state_problem, DickePrepReport};
pub use qsl::{mandelstam_tamm_bound, qsl_sweep, QslSweepResult};

use qcore::{DenseOperator, StateVector};

/// What the evolution should reach.
#[derive(Debug, Clone)]
pub enum Target {
    /// Drive `initial` to `target` (cost from |<target|U|initial>|^2).
    State {
        initial: StateVector,
        target: StateVector,
    },
    /// Realize `target` as the full evolution (cost from |Tr(U*^dag U)|/d).
    Unitary { target: DenseOperator },
}

/// A pulse-engineering problem: the step Hamiltonian as a function of the
/// control values, its per-field derivatives, and the target.
pub struct ControlProblem {
    pub dim: usize,
    pub n_fields: usize,
    /// H(controls at one step).
    pub hamiltonian: Box<dyn Fn(&[f64]) -> DenseOperator + Sync + Send>,
    /// dH/d(control k) at the given control values.
    pub dhamiltonian: Box<dyn Fn(&[f64], usize) -> DenseOperator + Sync + Send>,
    pub target: Target,
}

impl ControlProblem {
    pub fn is_unitary_kind(&self) -> bool {
        matches!(self.target, Target::Unitary { .. })
    }
}

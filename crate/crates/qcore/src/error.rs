use thiserror::Error;

/// Errors raised by the dense linear algebra and Pauli algebra layers.
#[derive(Debug, Clone, Error)]
pub enum QcoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("operator is not Hermitian: max |H - H^dag| entry = {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },

    #[error("near-degenerate spectrum: |E_n - E_m| = {gap:.3e} below tolerance {tol:.3e}")]
    NearDegenerateGap { gap: f64, tol: f64 },

    #[error("projection onto an impossible branch: probability = {prob:.3e}")]
    ImpossibleBranch { prob: f64 },

    #[error("operator is not a projector: max |P^2 - P| entry = {deviation:.3e}")]
    NotProjector { deviation: f64 },

    #[error("site-count mismatch: {a} vs {b}")]
    SiteCountMismatch { a: usize, b: usize },

    #[error("dense conversion cap exceeded: {n_sites} sites > cap {cap}")]
    DenseCapExceeded { n_sites: usize, cap: usize },

    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-norm {off:.3e})")]
    EigNoConvergence { sweeps: usize, off: f64 },
}

pub type Result<T> = std::result::Result<T, QcoreError>;

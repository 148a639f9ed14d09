use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum StaError {
    #[error(transparent)]
    Core(#[from] qcore::QcoreError),

    #[error(transparent)]
    Model(#[from] qmodels::ModelError),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("control term defined only in the broken phase g > 1, got g = {0}")]
    OutOfPhase(f64),

    #[error("commutator ansatz exploded: {0} strings exceed the cap of 10000")]
    BasisExplosion(usize),

    #[error("parameter loop is not closed")]
    PathNotClosed,
}

pub type Result<T> = std::result::Result<T, StaError>;

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum GrapeError {
    #[error(transparent)]
    Core(#[from] qcore::QcoreError),

    #[error(transparent)]
    Model(#[from] qmodels::ModelError),

    #[error("invalid control layout: {0}")]
    InvalidControls(String),
}

pub type Result<T> = std::result::Result<T, GrapeError>;

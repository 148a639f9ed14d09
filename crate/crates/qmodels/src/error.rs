use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("momentum-space construction requires an even site count, got {0}")]
    OddSiteCount(usize),

    #[error("excitation index {k} out of range 0..={n}")]
    ExcitationOutOfRange { k: usize, n: usize },
}

pub type Result<T> = std::result::Result<T, ModelError>;

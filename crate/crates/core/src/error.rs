use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not quasimodular of weight {weight}: {detail}")]
    NotQuasimodular { weight: u32, detail: String },
    #[error("pi^2 residue nonzero in leading term")]
    PiResidue,
    #[error("volume unavailable for {0:?}")]
    VolumeUnavailable(Vec<i64>),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

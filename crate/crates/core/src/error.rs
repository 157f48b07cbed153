use thiserror::Error;

use crate::chars::Parity;
use crate::gf::GfError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("parity mismatch: space is {space}, curve is {curve}")]
    ParityMismatch { space: Parity, curve: Parity },
    #[error("space and curve have different central characters")]
    CentralCharMismatch,
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("{0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

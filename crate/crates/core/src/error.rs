use thiserror::Error;

/// Library error. Mathematical "false" answers are values, never errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("not a true character: {0}")]
    NotACharacter(String),
    #[error("not an sl2-character: {0}")]
    NotSl2Character(String),
    #[error("not quasi-affine: {0}")]
    NotQuasiAffine(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("unsupported rank: {0}")]
    UnsupportedRank(usize),
    #[error("precision insufficient: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

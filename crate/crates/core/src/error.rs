use crate::exactfield::FieldError;

/// Errors of the geometric and lattice computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("curve is singular at {0}")]
    Singular(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("not a member of the pencil")]
    NotAMember,
    #[error("not simple crossings: {0}")]
    NotSimpleCrossings(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `Error::Check` with the message unless the condition holds.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Check(msg()))
    }
}

use thiserror::Error;

use crate::oracle::SlopeMultiset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of an operation was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The input is well-formed but lies outside the supported scope.
    #[error("unsupported scope: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The two inputs of a root-difference computation share a root.
    /// `off_diagonal` holds the valuations of the nonzero differences.
    #[error("shared root: {zero_roots} vanishing root difference(s)")]
    SharedRoot {
        zero_roots: usize,
        off_diagonal: SlopeMultiset,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::kernel::FamilyKind;

/// Errors raised by monoid construction, parsing and evaluation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("family mismatch: expected a {expected} element, got `{found}`")]
    FamilyMismatch { expected: FamilyKind, found: String },

    #[error("`{0}` is not an element of this monoid")]
    NotAnElement(String),

    #[error("{family} is not enumerable")]
    NonEnumerable { family: FamilyKind },

    #[error("`{op}` is not supported for {family}")]
    Unsupported {
        op: &'static str,
        family: FamilyKind,
    },

    #[error("level cap {cap} exceeded (needed level {needed})")]
    LevelCapExceeded { cap: u32, needed: u32 },

    #[error("invalid spec field `{field}`: {reason}")]
    InvalidSpec { field: String, reason: String },

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("search space too large: {0}")]
    TooLarge(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn spec(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidSpec {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

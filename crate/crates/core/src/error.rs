use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A term outside dom(F); carries the printed offending subterm.
    #[error("not in the domain of F: offending subterm `{subterm}` ({reason})")]
    Domain { subterm: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

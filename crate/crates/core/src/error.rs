//! Error type shared by every module in the crate.

use crate::corpus::EntityScope;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A corpus line could not be turned into a record. `line` is the
    /// 1-based line number in the input.
    #[error("parse error at line {line}: field `{field}`: {message}")]
    Parse {
        line: usize,
        field: &'static str,
        message: String,
    },

    /// The same paper id appeared twice in one record stream. Positions are
    /// line numbers when reading a file, record ordinals otherwise.
    #[error("duplicate paper id `{id}` (positions {first} and {second})")]
    DuplicateId {
        id: String,
        first: usize,
        second: usize,
    },

    /// A record handed straight to the builder violated a corpus invariant.
    #[error("invalid record `{id}`: {message}")]
    InvalidRecord { id: String, message: String },

    /// The entity id does not exist in the corpus at all.
    #[error("unknown {scope} `{id}`")]
    UnknownEntity { scope: EntityScope, id: String },

    /// The entity exists but has no publications at the requested snapshot.
    #[error("{scope} `{id}` has no publications as of year {as_of}")]
    NotInView {
        scope: EntityScope,
        id: String,
        as_of: i32,
    },

    /// Invalid metric options (bad weight table, inverted period, ...).
    #[error("invalid options: {0}")]
    Options(String),

    /// The operation was called with arguments it does not accept.
    #[error("{0}")]
    Usage(String),

    /// A ratio metric whose denominator is empty (e.g. a journal with no
    /// citable items in the impact-factor window).
    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    /// Portfolio statistics over zero publications.
    #[error("no publications in scope for {scope} `{id}`")]
    EmptyPortfolio { scope: EntityScope, id: String },

    /// Synthetic corpus parameters that cannot be satisfied.
    #[error("generation error: {0}")]
    Generation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the data (missing entities, malformed
    /// corpus files) as opposed to how the caller invoked the operation.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::DuplicateId { .. }
                | Error::InvalidRecord { .. }
                | Error::UnknownEntity { .. }
                | Error::NotInView { .. }
                | Error::UndefinedMetric(_)
                | Error::EmptyPortfolio { .. }
                | Error::Io(_)
        )
    }
}

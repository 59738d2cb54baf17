use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The embedding search ran out of budget before finishing.
    #[error("{kind} limit exceeded after {} nodes ({} leaves)", stats.nodes, stats.leaves)]
    LimitExceeded { kind: LimitKind, stats: SearchStats },

    /// A result failed a self-check that should hold unconditionally.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

/// Which budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    Nodes,
    Time,
    Triples,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::Nodes => "node",
            LimitKind::Time => "time",
            LimitKind::Triples => "triple",
        })
    }
}

/// Counters collected by the embedding search.
///
/// `nodes` counts placed rows (search tree nodes), `leaves` counts complete
/// embeddings visited before deduplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    #[serde(with = "crate::decimal")]
    pub nodes: u64,
    #[serde(with = "crate::decimal")]
    pub leaves: u64,
}

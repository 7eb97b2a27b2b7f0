use thiserror::Error;

use crate::network::Tuple;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown calculus `{0}`")]
    UnknownCalculus(String),

    #[error("{at}: unknown relation `{name}` for calculus {calculus}")]
    UnknownRelation {
        at: String,
        name: String,
        calculus: String,
    },

    #[error("{at}: relation `{name}` has arity {expected}, applied to {found} arguments")]
    ArityMismatch {
        at: String,
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("{at}: duplicate variable `{name}`")]
    DuplicateVariable { at: String, name: String },

    #[error("{at}: unknown variable `{name}`")]
    UnknownVariable { at: String, name: String },

    #[error("{at}: {msg}")]
    Invalid { at: String, msg: String },

    #[error("parse error at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("networks disagree on tuple {0:?}")]
    Conflict(Tuple),

    #[error("network is unsatisfiable")]
    Unsat,

    #[error("calculus {0} has no model realizer")]
    NoRealizer(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("oracle guard: {vars} variables exceeds the limit of {limit} for this calculus")]
    OracleGuard { vars: usize, limit: usize },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Invalid {
            at: at.into(),
            msg: msg.into(),
        }
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A bipartite graph handed to the matching routine has no perfect matching.
    #[error("no perfect matching exists: {0}")]
    Infeasible(String),

    /// An invariant guaranteed by the theory was violated at run time. Seeing one of these
    /// means a bug in this crate or an oracle that is not monotone submodular / not a matroid.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("invalid instance field `{field}`: {reason}")]
    Construction { field: String, reason: String },

    #[error("failed to parse instance{}: {source}", path.as_ref().map(|p| format!(" {p}")).unwrap_or_default())]
    Parse {
        path: Option<String>,
        #[source]
        source: serde_json::Error,
    },

    #[error(
        "unknown algorithm `{0}` (expected one of greedy, split, rrgreedy, rpgreedy, msg, msg-det)"
    )]
    UnknownAlgorithm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn construction(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Construction {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

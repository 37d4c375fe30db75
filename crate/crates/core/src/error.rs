use thiserror::Error;

/// A version or range string that does not follow the accepted grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{input}`: {message} at `{token}`")]
pub struct ParseError {
    pub input: String,
    /// The offending token.
    pub token: String,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(input: &str, token: &str, message: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            token: token.to_string(),
            message: message.into(),
        }
    }
}

/// Failure to load a registry, manifest, advisory or lockfile document.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("at `{path}`: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error("duplicate entry at `{path}`")]
    Duplicate { path: String },
    #[error("value out of range at `{path}`: {message}")]
    OutOfRange { path: String, message: String },
}

impl LoadError {
    pub(crate) fn from_json(err: serde_path_to_error::Error<serde_json::Error>) -> Self {
        let path = err.path().to_string();
        LoadError::Schema {
            path,
            message: err.into_inner().to_string(),
        }
    }

    pub fn path(&self) -> &str {
        match self {
            LoadError::Schema { path, .. }
            | LoadError::Parse { path, .. }
            | LoadError::Duplicate { path }
            | LoadError::OutOfRange { path, .. } => path,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown package `{0}`")]
pub struct UnknownPackage(pub String);

/// An invalid solver configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("at least one objective is required")]
    NoObjectives,
    #[error("objective `{0}` listed more than once")]
    DuplicateObjective(String),
    #[error("unknown objective `{0}`")]
    UnknownObjective(String),
    #[error("unknown consistency rule `{0}`")]
    UnknownConsistency(String),
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    /// Malformed document; `pointer` is a JSON pointer into it.
    #[error("{path}: parse error at {pointer}: {message}")]
    Parse { path: String, pointer: String, message: String },

    #[error("{0}")]
    Core(#[from] gcq_core::Error),

    /// A core error raised while loading the named file.
    #[error("{path}: {source}")]
    Invalid { path: String, source: gcq_core::Error },

    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn in_file(self, path: &str) -> Self {
        match self {
            CliError::Core(source) => CliError::Invalid {
                path: path.to_string(),
                source,
            },
            other => other,
        }
    }
}

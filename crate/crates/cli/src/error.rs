use thiserror::Error;

/// Failures before any mathematics runs: unreadable or malformed input.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid scenario: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("invalid catalog: {0}")]
    Catalog(String),
}

pub type CliResult<T> = Result<T, CliError>;

//! JSON file formats and the `fockwc` command-line front end over
//! [`fockwc_core`].

pub mod cli;
pub mod json;

pub use cli::{run, CommandResult, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("malformed JSON in {0}: {1}")]
    Json(String, #[source] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] fockwc_core::Error),
}

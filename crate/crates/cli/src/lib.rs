//! Command-line front end for `gsp4-core`: configuration, output formats,
//! the subcommands and the acceptance suite behind `verify-all`.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

/// A malformed invocation. The message names the offending flag; the
/// binary exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

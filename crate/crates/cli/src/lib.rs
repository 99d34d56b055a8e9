//! File formats and command implementations behind the `shannon` binary.
//!
//! Every command returns an [`Output`] holding both renderings plus the exit
//! code, so the binary only picks one rendering and exits.

pub mod commands;
mod error;
pub mod format;
pub mod histogram;
pub mod tree;

pub use error::CliError;

/// Rendered result of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    /// Text for people; entropies to six decimals.
    pub human: String,
    /// Pretty-printed JSON with full-precision numbers.
    pub json: String,
    /// 0 on success, 4 when a numerical check failed.
    pub exit_code: u8,
}

//! Error type shared by all modules, with a stable mapping to CLI exit codes.

use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// The CLI maps each variant class to a fixed exit code: parse errors exit 2,
/// domain/configuration errors exit 3, regression mismatches exit 4, and
/// internal inconsistencies (including contradictions between realized points
/// and proved lower bounds) exit 5.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; carries a 1-based line number when known.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A precondition on mathematical input was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// An inconsistent or incomplete configuration (e.g. a profile declaring a
    /// multiple class without mod-p dimensions).
    #[error("configuration error: {0}")]
    Config(String),

    /// The requested computation is deliberately unsupported.
    #[error("not implemented: {0}")]
    NotImplemented(String),

    /// A search was refused because the candidate estimate exceeds the budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A regression table row disagreed with its recorded value.
    #[error("regression mismatch: {0}")]
    Regression(String),

    /// A realized construction fell strictly below a proved lower bound; this
    /// signals a bug (or a falsified claim) and is surfaced loudly.
    #[error("contradiction: {0}")]
    Contradiction(String),

    /// Cross-checks inside the library disagreed with each other.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    /// I/O failure while reading or writing artifact files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// The process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Domain(_) | Error::Config(_) | Error::NotImplemented(_) | Error::Budget(_) => 3,
            Error::Io(_) => 3,
            Error::Regression(_) => 4,
            Error::Contradiction(_) | Error::Internal(_) => 5,
        }
    }
}

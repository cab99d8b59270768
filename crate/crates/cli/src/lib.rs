//! Command-line front end for the complementarity library: damping-
//! parameter sweeps with CSV/JSON/SVG output, a seeded verification suite
//! over the library's invariants, and the published-formula audit for the
//! qutrit decay cascade.

pub mod config;
pub mod discrepancy;
pub mod output;
pub mod sweep;
pub mod verify;

/// Errors carrying their process exit code: a violated output guarantee
/// exits with 1, configuration problems with 2, output problems with 3.
/// Verification suite failures are not errors — the report is the
/// product — and are mapped to exit code 1 in `main`.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Invariant(_) => 1,
            Self::Config(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

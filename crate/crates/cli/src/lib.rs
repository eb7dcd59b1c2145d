//! Expression parsing, command dispatch and JSON reports for the `heegaard`
//! binary.

pub mod commands;
pub mod eval;
pub mod parse;
pub mod report;

pub use eval::{normal_form, parse, Context, Dialect, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown atom `{name}` for dialect {dialect} at byte {pos}")]
    UnknownAtom { name: String, dialect: String, pos: usize },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] heegaard_core::Error),

    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),

    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// `2` for malformed invocations, `1` for everything else.
    pub fn exit_code(&self) -> i32 {
        use heegaard_core::Error as E;
        match self {
            CliError::Syntax { .. } | CliError::UnknownAtom { .. } | CliError::Usage(_) => 2,
            CliError::Core(E::Parse { .. } | E::Unknown(_)) => 2,
            _ => 1,
        }
    }
}

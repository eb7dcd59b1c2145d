use std::fmt;

use crate::scalars::Var;

/// Errors raised by the algebra engines and the K-theory layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A localized coefficient was specialized at zero.
    #[error("cannot evaluate {var} = 0: coefficient `{coefficient}` has a negative power of {var}")]
    EvalAtZero { var: Var, coefficient: String },

    /// Malformed textual input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// An identifier (relation name, suite name, ...) is not known.
    #[error("unknown identifier `{0}`")]
    Unknown(String),
}

impl Error {
    pub fn domain(msg: impl fmt::Display) -> Self {
        Error::Domain(msg.to_string())
    }

    pub fn parse(position: usize, message: impl fmt::Display) -> Self {
        Error::Parse { position, message: message.to_string() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The variants map onto the CLI exit-code classes: `Input`, `Resource` and
/// `DomainTooSmall` are caller problems, `Check` is a property-check failure
/// that carries a human-readable witness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input: {0}")]
    Input(String),

    #[error("resource: ball of radius {radius} exceeds the vertex limit {limit}")]
    Resource { radius: u32, limit: usize },

    #[error("domain too small: {unknown} of {total} pairs have translates outside the ball; try a radius above {radius}")]
    DomainTooSmall {
        unknown: usize,
        total: usize,
        radius: u32,
    },

    #[error("check failed: {0}")]
    Check(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Short machine-readable class name, used in one-line CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Resource { .. } => "resource",
            Error::DomainTooSmall { .. } => "domain",
            Error::Check(_) => "check",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

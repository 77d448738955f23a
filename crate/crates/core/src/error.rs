use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A materialized or scanned object would exceed its configured level cap.
    #[error("{what}: level {level} exceeds cap {cap}{hint}")]
    Capacity {
        what: &'static str,
        level: u32,
        cap: u32,
        hint: &'static str,
    },

    /// Two operands live in different path spaces.
    #[error("incompatible path spaces: level {left} vs level {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exact cross-check failed. Reaching this is a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, level: u32, cap: u32) -> Self {
        Error::Capacity {
            what,
            level,
            cap,
            hint: "",
        }
    }

    pub(crate) fn check_level(left: u32, right: u32) -> Result<()> {
        if left == right {
            Ok(())
        } else {
            Err(Error::LevelMismatch { left, right })
        }
    }
}

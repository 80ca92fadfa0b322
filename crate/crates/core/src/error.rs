use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a precondition (standing assumption, shape, variable tag).
    #[error("validation error: {0}")]
    Validation(String),
    /// The operator expression could not be parsed.
    #[error("parse error at byte {offset}: {message}{}", expected_suffix(.expected))]
    Parse {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(", "))
    }
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

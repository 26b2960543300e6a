use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The CLI maps these onto exit codes, so each variant corresponds to one
/// class of failure rather than to one call site.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("name error at {line}:{col}: unknown identifier `{name}`")]
    Name {
        line: usize,
        col: usize,
        name: String,
    },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("resource limit `{cap}` exceeded: {detail}")]
    Resource { cap: &'static str, detail: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn resource(cap: &'static str, detail: impl Into<String>) -> Self {
        Error::Resource {
            cap,
            detail: detail.into(),
        }
    }

    /// True for errors caused by malformed input text.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Name { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

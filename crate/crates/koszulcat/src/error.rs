use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Range(String),

    #[error("wrong object: {0}")]
    WrongObject(String),

    #[error("map has no section: {0}")]
    NoSection(String),

    #[error("element is not central: {0}")]
    NotCentral(String),

    #[error("submodule is not stable under the action: {0}")]
    Unstable(String),

    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input, as opposed
    /// to a mathematical refusal (non-central element, failed idempotence...).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_)
                | Error::Parse { .. }
                | Error::Dimension(_)
                | Error::Range(_)
                | Error::WrongObject(_)
                | Error::Window(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}

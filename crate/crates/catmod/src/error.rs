use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {what} needs {predicted} elements, cap is {cap}")]
    Budget {
        what: String,
        predicted: String,
        cap: u64,
    },
    #[error("window too small: {0}")]
    Window(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

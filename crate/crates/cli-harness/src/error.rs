use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`: {reason}")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error(
        "unknown suite `{0}`; expected cocycles, schatten, spectral-triple, wzw, dressed or all"
    )]
    UnknownSuite(String),
    #[error("unknown scan axis `{0}`; expected K, q, p, Lambda or N")]
    UnknownAxis(String),
    #[error("budget refused: {0}")]
    Budget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

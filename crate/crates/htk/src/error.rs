use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid document: {0}")]
    Document(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("no reconstruction for a tensor classified as {0}")]
    Class(&'static str),
    #[error(transparent)]
    Core(#[from] htk_core::Error),
}

impl CliError {
    /// 1 for bad input, 2 when the tensor is degenerate for the request.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Class(_) => 2,
            CliError::Core(htk_core::Error::Degenerate { .. } | htk_core::Error::Conditioning { .. }) => 2,
            _ => 1,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument outside the physically meaningful domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Incident photon cannot scatter inelastically from the bound electron.
    #[error("kinematically forbidden: incident energy {e_o} (mc^2) does not exceed binding energy {e_b} (mc^2)")]
    Forbidden { e_o: f64, e_b: f64 },

    #[error("scattering table line {line}: {reason}")]
    Table { line: u64, reason: String },

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("unknown figure `{0}` (valid: fig3a, fig3b, fig4a, fig4b, fig6)")]
    UnknownFigure(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes of the `faddeev` binary.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const BLOWUP: i32 = 3;
    pub const NAN: i32 = 4;
    pub const CONFIG: i32 = 5;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),

    #[error("cannot parse {path}: {message}")]
    ConfigParse { path: PathBuf, message: String },

    #[error("cannot read config {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unknown profile `{0}`")]
    UnknownProfile(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),

    #[error(transparent)]
    Core(#[from] faddeev_core::Error),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::ConfigParse { .. } | Self::ConfigRead { .. } | Self::UnknownProfile(_) => exit::CONFIG,
            Self::Core(faddeev_core::Error::InvalidParameter { .. })
            | Self::Core(faddeev_core::Error::DomainTooSmall(_))
            | Self::Core(faddeev_core::Error::GridTooCoarse(_)) => exit::CONFIG,
            _ => exit::INTERNAL,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at byte {position}: {message}")]
    Parse { message: String, position: usize },
    #[error("usage: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] jmult::error::Error),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    version: u32,
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        use jmult::error::Error as E;
        match self {
            Self::Parse { .. } => "parse",
            Self::Usage(_) => "usage",
            Self::Unsupported(_) => "unsupported",
            Self::Io(_) => "io",
            Self::Core(E::DimensionMismatch { .. }) => "dimension_mismatch",
            Self::Core(E::Overflow) => "overflow",
            Self::Core(_) => "invalid_input",
        }
    }

    /// 2 for anything wrong with the input, 1 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) | Self::Core(jmult::error::Error::Overflow) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let (message, position) = match self {
            Self::Parse { message, position } => (message.clone(), Some(*position)),
            Self::Usage(m) | Self::Unsupported(m) => (m.clone(), None),
            other => (other.to_string(), None),
        };
        let report = ErrorReport {
            version: crate::report::SCHEMA_VERSION,
            error: ErrorBody {
                kind: self.kind(),
                message,
                position,
            },
        };
        serde_json::to_string(&report).expect("error report serializes")
    }
}

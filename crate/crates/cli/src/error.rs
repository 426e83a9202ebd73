use pooled_core::SummaryError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: field `{field}`: {message}")]
    Malformed {
        line: u64,
        field: &'static str,
        message: String,
    },

    #[error("{0}")]
    Input(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Summary(#[from] SummaryError),
}

impl CliError {
    pub fn malformed(line: u64, field: &'static str, message: impl Into<String>) -> Self {
        CliError::Malformed {
            line,
            field,
            message: message.into(),
        }
    }

    /// 1 for unreadable or malformed input, 2 for inputs that are well formed
    /// but infeasible or mutually inconsistent.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Summary(e) if e.is_inconsistency() => 2,
            _ => 1,
        }
    }
}

use serde_json::{json, Value};
use thiserror::Error;

/// Problems with the config file itself.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config {path}: {reason}")]
    MissingFile { path: String, reason: String },

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },

    #[error("unknown key `{key}` at line {line}, column {column}")]
    UnknownKey { key: String, line: usize, column: usize },

    #[error("missing required key `{key}`")]
    MissingKey { key: String, line: Option<usize> },

    #[error("wrong type at line {line}, column {column}: {message}")]
    InvalidType { line: usize, column: usize, message: String },

    #[error("invalid value for `{key}`{}: {reason}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Invalid { key: String, kind: &'static str, reason: String, line: Option<usize> },
}

impl ConfigError {
    pub fn from_json(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        // serde_json appends " at line L column C"
        let message = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m).to_string();
        match e.classify() {
            Category::Data => {
                if let Some(rest) = message.strip_prefix("unknown field `") {
                    let key = rest.split('`').next().unwrap_or_default().to_string();
                    ConfigError::UnknownKey { key, line, column }
                } else if let Some(rest) = message.strip_prefix("missing field `") {
                    let key = rest.split('`').next().unwrap_or_default().to_string();
                    ConfigError::MissingKey { key, line: Some(line) }
                } else {
                    ConfigError::InvalidType { line, column, message }
                }
            }
            _ => ConfigError::Malformed { line, column, message },
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            ConfigError::MissingFile { .. } => "missing_file",
            ConfigError::Malformed { .. } => "malformed_json",
            ConfigError::UnknownKey { .. } => "unknown_key",
            ConfigError::MissingKey { .. } => "missing_key",
            ConfigError::InvalidType { .. } => "invalid_type",
            ConfigError::Invalid { kind, .. } => kind,
        }
    }

    fn detail(&self) -> Value {
        match self {
            ConfigError::MissingFile { path, .. } => json!({ "path": path }),
            ConfigError::Malformed { line, column, .. } | ConfigError::InvalidType { line, column, .. } => {
                json!({ "line": line, "column": column })
            }
            ConfigError::UnknownKey { key, line, column } => json!({ "key": key, "line": line, "column": column }),
            ConfigError::MissingKey { key, line } => json!({ "key": key, "line": line }),
            ConfigError::Invalid { key, line, .. } => json!({ "key": key, "line": line }),
        }
    }
}

/// Failure of a CLI run, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),

    /// The kernels rejected a parameter combination.
    #[error("invalid input: {0}")]
    Input(fluxpulse_core::Error),

    #[error("numerical failure: {0}")]
    Numerical(fluxpulse_core::Error),

    #[error("I/O error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<fluxpulse_core::Error> for CliError {
    fn from(e: fluxpulse_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Input(e)
        }
    }
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    /// Machine-readable error record.
    pub fn record(&self) -> Value {
        let (category, detail) = match self {
            CliError::Config(e) => (e.category(), e.detail()),
            CliError::Input(_) => ("invalid_input", Value::Null),
            CliError::Numerical(_) => ("numerical_failure", Value::Null),
            CliError::Io { path, .. } => ("io", json!({ "path": path })),
        };
        json!({
            "status": "error",
            "exit_code": self.exit_code(),
            "category": category,
            "message": self.to_string(),
            "detail": detail,
        })
    }
}

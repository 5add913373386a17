use std::fmt;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Invalid configuration or parameters (exit 2).
    Config(String),
    /// A numerical tolerance or safety limit was not met (exit 3).
    Numerical(String),
    /// Reading or writing files failed (exit 1).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<frac_hawkes::Error> for CliError {
    fn from(e: frac_hawkes::Error) -> Self {
        use frac_hawkes::Error as E;
        match e {
            E::Domain(_) | E::InvalidParams(_) => CliError::Config(e.to_string()),
            E::Io(_) | E::Format(_) => CliError::Io(e.to_string()),
            E::Singularity { .. }
            | E::QuadratureNonConvergence { .. }
            | E::InversionAccuracy { .. }
            | E::Pole { .. }
            | E::EventCapExceeded { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

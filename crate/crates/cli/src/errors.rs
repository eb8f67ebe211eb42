//! Error classification driving the process exit code.

use report_judge::judge::GatewayError;

/// A failed command, sorted into the two non-zero exit classes.
#[derive(Debug)]
pub enum CliError {
    /// Unusable input or configuration: exit 2.
    Input(anyhow::Error),
    /// The backend kept failing after retries: exit 3.
    Backend(anyhow::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn input(err: impl Into<anyhow::Error>) -> Self {
        CliError::Input(err.into())
    }

    /// Classifies a gateway failure: transport exhaustion and persistent
    /// schema violations are the backend's fault; everything else (empty
    /// report, missing capability, invalid tree) is an input/config problem.
    pub fn from_gateway(err: GatewayError) -> Self {
        match err {
            GatewayError::Backend { .. } | GatewayError::SchemaInvalid { .. } => {
                CliError::Backend(err.into())
            }
            _ => CliError::Input(err.into()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Backend(_) => 3,
        }
    }

    pub fn source(&self) -> &anyhow::Error {
        match self {
            CliError::Input(err) | CliError::Backend(err) => err,
        }
    }
}

/// Shorthand for fallible I/O with path context, classified as input errors.
pub fn input_io<T>(
    result: std::io::Result<T>,
    context: impl FnOnce() -> String,
) -> CliResult<T> {
    result.map_err(|err| CliError::Input(anyhow::Error::new(err).context(context())))
}

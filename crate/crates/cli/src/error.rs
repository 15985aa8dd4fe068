//! Error classification for exit codes and the machine-readable error JSON.

use apf_core::apf::CurveError;
use apf_core::bootstrap::BootstrapError;
use apf_core::envelope::EnvelopeError;
use apf_core::fda::FdaError;
use apf_core::geometry::GeometryError;
use apf_core::persistence::GraphError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameter combinations: exit code 1.
    Usage(String),
    /// Unreadable or invalid input data: exit code 2.
    Data(String),
    /// A computation produced no usable result: exit code 3.
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Numeric(_) => "numeric",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => m,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": { "kind": self.kind(), "message": self.message() }
        })
        .to_string()
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<FdaError> for CliError {
    fn from(e: FdaError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<BootstrapError> for CliError {
    fn from(e: BootstrapError) -> Self {
        CliError::Data(e.to_string())
    }
}

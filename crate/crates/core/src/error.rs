use thiserror::Error;

/// Errors raised by the thermodynamic and wave-construction layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("internal numerical failure: {0}")]
    Internal(String),
}

impl ModelError {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        ModelError::Domain { what, detail: detail.into() }
    }
}

/// Failures of the time integrator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("positivity violated at tau = {tau}: v = {value} at node {node} (floor {floor})")]
    Positivity { tau: f64, node: usize, value: f64, floor: f64 },

    #[error("non-finite field value at tau = {tau}, node {node}")]
    NonFinite { tau: f64, node: usize },

    #[error("invalid solver setup: {0}")]
    Setup(String),
}

pub type ModelResult<T> = Result<T, ModelError>;

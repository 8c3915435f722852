use thiserror::Error;

/// Errors raised by model evaluation, optimization and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of a model or type.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model returned a non-finite value during a numeric search.
    #[error("solver error: model value {value} is not finite at r = {r}")]
    NonFinite { r: f64, value: f64 },

    /// The model cannot be evaluated for the requested topology.
    #[error("model `{model}` does not support the {topology} topology")]
    Unsupported { model: &'static str, topology: &'static str },

    /// Invalid simulator or workload configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Invalid kernel input data.
    #[error("input error: {0}")]
    Input(String),

    /// A simulated run diverged from its serial reference.
    #[error("simulation error: {0}")]
    Simulation(String),

    /// Workload CSV serialization failure.
    #[error("csv error: {0}")]
    Csv(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

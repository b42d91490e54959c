use thiserror::Error;

/// Errors produced by the evaluators and the sweep driver.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed or inconsistent input (atom files, configs, CSV).
    #[error("invalid input: {0}")]
    Input(String),

    /// The requested evaluator does not apply to this kinematic regime.
    #[error("regime error: {0}")]
    Regime(String),

    /// Quadrature or series evaluation failed to reach the requested tolerance.
    #[error("numerical failure: {message} (partial estimate {partial:e} +/- {error:e})")]
    Numerical {
        message: String,
        partial: f64,
        error: f64,
    },

    /// The damped real-axis oracle could not stabilise its extrapolation.
    #[error("oracle unreliable: extrapolation spread {spread:e} exceeds {limit:e} (value {value:e})")]
    OracleUnreliable { value: f64, spread: f64, limit: f64 },

    /// A numerically measured power law disagrees with the expected form.
    #[error("inconsistent regime: {0}")]
    InconsistentRegime(String),

    /// Power-law fit could not be performed.
    #[error("fit error: {0}")]
    Fit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Regime(_) => 2,
            Error::Numerical { .. } | Error::OracleUnreliable { .. } => 3,
            Error::InconsistentRegime(_) => 3,
            Error::Domain(_) | Error::Input(_) | Error::Fit(_) => 1,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

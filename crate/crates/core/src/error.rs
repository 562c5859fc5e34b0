use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid channel configuration: {0}")]
    InvalidConfig(String),

    #[error("energy rate {b} is infeasible (maximum deliverable is {max})")]
    InfeasibleEnergy { b: f64, max: f64 },

    #[error("degenerate SNR: {0}")]
    DegenerateSnr(&'static str),

    #[error("message index {index} outside 1..={size}")]
    MessageOutOfRange { index: String, size: String },

    #[error("posterior error variance of transmitter {user} is no longer positive at step {t}")]
    Divergence { user: usize, t: usize },

    #[error("input correlation equals one; message point cannot be reconstructed")]
    DegenerateCorrelation,

    #[error("invalid scheme parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

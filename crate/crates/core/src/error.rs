use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero state")]
    ZeroState,

    #[error("phase sequence has length {got}, expected {expected}")]
    PhaseLength { expected: usize, got: usize },

    #[error("unphysical coherence: |gamma| = {0} > 1")]
    UnphysicalCoherence(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("M must be divisible by 4 (got {0})")]
    UnbalancedPairs(usize),

    #[error("unsampled correlator for basis combination {0}")]
    UnsampledCorrelator(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("state of {size} amplitudes exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("schedule has length {got}, state has {expected} pairs")]
    ScheduleLength { expected: usize, got: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown benchmark '{0}' (expected rosenbrock, himmelblau, booth, ackley or rastrigin)")]
    UnknownBenchmark(String),

    #[error("empty sample set")]
    EmptySampleSet,

    #[error("least-squares system is ill-conditioned (rank-deficient with ridge = {ridge}); raise the ridge parameter")]
    IllConditioned { ridge: f64 },

    #[error("truth has zero variance on the evaluation grid; R^2 is undefined")]
    DegenerateVariance,

    #[error("operation requires dimension {expected}, surrogate has {got}")]
    UnsupportedDimension { expected: usize, got: usize },

    #[error("flow step rejected: dt * max|K| = {dt_k:.3e} >= 1 (dt = {dt:.3e}, max|K| = {max_k:.3e}); halve dt or stop")]
    UnstableStep { dt: f64, max_k: f64, dt_k: f64 },

    #[error("flow state is no longer finite at iteration {iteration}")]
    NonFiniteState { iteration: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("pipeline stage '{stage}' failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

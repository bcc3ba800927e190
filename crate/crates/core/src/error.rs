use thiserror::Error;

/// Errors produced by the numerical routines and the CLI front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid axis {0}: expected 1, 2 or 3")]
    InvalidAxis(i64),

    #[error("rapidity {eta} outside supported range |eta| <= {limit}")]
    RapidityOutOfRange { eta: f64, limit: f64 },

    #[error("velocity {0} outside (-1, 1)")]
    VelocityOutOfRange(f64),

    #[error("quadrature order {0} outside 1..=200")]
    InvalidOrder(usize),

    #[error("integration failure: non-finite value at node {0}")]
    IntegrationFailure(f64),

    #[error("tolerance {0} outside (0, 1)")]
    InvalidTolerance(f64),

    #[error("expansion did not converge within {cap} terms (tail {tail:e})")]
    NonConvergence { cap: usize, tail: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid spacing {spacing} too coarse (needs <= {limit})")]
    GridTooCoarse { spacing: f64, limit: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output error: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;

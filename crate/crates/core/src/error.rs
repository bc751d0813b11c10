use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("spectrum value {value} at index {index} is not finite")]
    NonFinite { index: usize, value: f64 },

    #[error("spectrum value {value} at index {index} is negative beyond round-off tolerance")]
    NegativeValue { index: usize, value: f64 },

    #[error("spectrum has zero total weight")]
    ZeroTotal,

    #[error("spectrum sums to {sum}, which deviates from 1 by more than {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state |{n}> is undefined: only {mode_count} Schmidt modes are nonzero")]
    UndefinedState { n: usize, mode_count: usize },

    #[error("N = {n} is outside the computed table (N_max = {n_max})")]
    OutOfTable { n: usize, n_max: usize },

    #[error("{what} supports at most {limit} modes, got {modes}")]
    TooManyModes { what: &'static str, limit: usize, modes: usize },

    #[error("wavefunction has zero norm and cannot be normalized")]
    NotNormalizable,

    #[error("grid is too coarse: {detail}")]
    UnderResolved { detail: String },

    #[error("grid does not cover the wavefunction: {detail}")]
    GridTooSmall { detail: String },

    #[error("quadrature did not converge: estimated error {achieved:e} exceeds tolerance {requested:e}")]
    QuadratureNotConverged { achieved: f64, requested: f64 },

    #[error("purity {purity} is not below 1; the short-range approximation is invalid for b/a0 = {b_over_a0}")]
    RegimeViolation { purity: f64, b_over_a0: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

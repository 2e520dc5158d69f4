//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range (valid {lo}..={hi})")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("window [{lo}, {hi}] is empty or outside the valid range [{valid_lo}, {valid_hi}]")]
    BadWindow {
        lo: usize,
        hi: usize,
        valid_lo: usize,
        valid_hi: usize,
    },

    #[error("table is not log-convex (first violation at k = {first_violation}); operation requires a log-convex sequence")]
    NotLogConvex { first_violation: usize },

    #[error("band {j} of the ladder is empty inside the table; sigma = {sigma} is below the sequence's derivation-closedness constant on that stretch")]
    EmptyBand { j: usize, sigma: f64 },

    #[error("argument t = {t} is outside the certified table range (0, {t_max}]")]
    TableRange { t: f64, t_max: f64 },

    #[error("derivative order {alpha} exceeds the aliasing guard {limit} for grid size {n}")]
    AliasGuard { alpha: usize, limit: usize, n: usize },

    #[error("grid dimension/shape mismatch: {0}")]
    GridMismatch(String),

    #[error("insufficient margin or resolution for cutoff construction: {0}")]
    InsufficientResolution(String),

    #[error("ladder does not cover the occupied spectrum: mode |xi| = {xi_abs} exceeds the last certified band edge {edge}")]
    UncoveredSpectrum { xi_abs: f64, edge: f64 },

    #[error("unknown operator `{0}` (expected laplacian, heat or grushin_sin)")]
    UnknownOperator(String),

    #[error("kernel candidate {index} is not annihilated by the operator (relative residual {residual:.3e})")]
    KernelViolation { index: usize, residual: f64 },

    #[error("operator has no kernel elements to sweep")]
    EmptyKernel,

    #[error("config error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use num_complex::Complex64;
use thiserror::Error;

use crate::certificates::Certificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("c is a nonpositive integer (c = {c})")]
    InvalidC { c: Complex64 },

    #[error("|z| = {modulus} exceeds the series radius cap {cap}")]
    RadiusExceeded { modulus: f64, cap: f64 },

    #[error("series did not converge within {max_terms} terms at z = {z}")]
    NoConvergence { z: Complex64, max_terms: usize },

    #[error("F(z) vanishes at z = {z} (|F| = {modulus:e}); z f'/f is undefined there")]
    ZeroOfF { z: Complex64, modulus: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition failed: {0}")]
    PrecondFailed(String),

    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    #[error("residual is not finite at s = {s:e}")]
    NonFinite { s: f64 },

    /// The positive-line minimizer landed within the margin of zero, so the
    /// strict inequality cannot be decided in floating point. The full trace is
    /// kept for reporting.
    #[error("oracle inconclusive: min residual {min_value:e} at s = {argmin_s:e}")]
    OracleInconclusive {
        min_value: f64,
        argmin_s: f64,
        certificate: Box<Certificate>,
    },
}

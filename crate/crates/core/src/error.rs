//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors produced by grid construction, spline evaluation, quantization,
/// and the datapath simulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplineError {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// A container has the wrong length or an inconsistent index range.
    Shape(String),
    /// A value does not fit the configured fixed-point format.
    Range(String),
    /// A computation produced or encountered a non-finite value.
    Numeric(String),
    /// Input data is degenerate, for example duplicated abscissae.
    Degenerate(String),
}

impl SplineError {
    /// Returns the same error with `context` prepended to its message.
    pub fn prefixed(self, context: &str) -> SplineError {
        use alloc::format;
        match self {
            SplineError::Domain(m) => SplineError::Domain(format!("{context}: {m}")),
            SplineError::Shape(m) => SplineError::Shape(format!("{context}: {m}")),
            SplineError::Range(m) => SplineError::Range(format!("{context}: {m}")),
            SplineError::Numeric(m) => SplineError::Numeric(format!("{context}: {m}")),
            SplineError::Degenerate(m) => SplineError::Degenerate(format!("{context}: {m}")),
        }
    }
}

impl fmt::Display for SplineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplineError::Domain(m) => write!(f, "domain error: {m}"),
            SplineError::Shape(m) => write!(f, "shape error: {m}"),
            SplineError::Range(m) => write!(f, "range error: {m}"),
            SplineError::Numeric(m) => write!(f, "numeric error: {m}"),
            SplineError::Degenerate(m) => write!(f, "degenerate input: {m}"),
        }
    }
}

impl core::error::Error for SplineError {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, SplineError>;

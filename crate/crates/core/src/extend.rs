//! Boundary extension of sampled signals.
//!
//! The coefficient rule reads two samples beyond each end of `[a, b]`, so a
//! signal must be extended before coefficients are computed. Two rules are
//! provided: [`ExtensionRule::ZeroPad`] writes zeros, matching the cleared
//! shift register the datapath starts from, and
//! [`ExtensionRule::QuadraticExtrapolate`] continues the signal with the
//! parabola through the three interior samples nearest each end.

use alloc::format;
use alloc::vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Result, SplineError};
use crate::grid::{SampledSignal, UniformGrid};

/// Default number of extension nodes per side, equal to the spline degree.
pub const EXTENSION_MARGIN: usize = 3;

/// How values outside `[a, b]` are filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtensionRule {
    /// Extension samples are zero.
    ZeroPad,
    /// Extension samples continue the parabola through the three nearest
    /// interior samples. Exact for signals that are polynomials of degree
    /// at most two.
    #[default]
    QuadraticExtrapolate,
}

impl fmt::Display for ExtensionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionRule::ZeroPad => f.write_str("zero-pad"),
            ExtensionRule::QuadraticExtrapolate => f.write_str("quadratic"),
        }
    }
}

impl FromStr for ExtensionRule {
    type Err = SplineError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero-pad" => Ok(ExtensionRule::ZeroPad),
            "quadratic" => Ok(ExtensionRule::QuadraticExtrapolate),
            other => Err(SplineError::Domain(format!(
                "unknown extension rule {other:?}, expected zero-pad or quadratic"
            ))),
        }
    }
}

/// Extends `raw` (one value per grid node) by `margin` nodes on each side.
///
/// # Errors
///
/// Shape error when `raw` does not have one value per node or `margin` is
/// zero; numeric error when a value is non-finite.
pub fn extend_signal(
    raw: &[f64],
    grid: &UniformGrid,
    margin: usize,
    rule: ExtensionRule,
) -> Result<SampledSignal> {
    let n = grid.node_count();
    if raw.len() != n {
        return Err(SplineError::Shape(format!(
            "signal has {} samples, grid has {n} nodes",
            raw.len()
        )));
    }
    if margin == 0 {
        return Err(SplineError::Shape(
            "extension margin must be at least 1".into(),
        ));
    }
    let mut values = vec![0.0; n + 2 * margin];
    values[margin..margin + n].copy_from_slice(raw);
    if rule == ExtensionRule::QuadraticExtrapolate {
        for j in 1..=margin {
            values[margin - j] = parabola_step(raw[0], raw[1], raw[2], j as f64);
            values[margin + n - 1 + j] =
                parabola_step(raw[n - 1], raw[n - 2], raw[n - 3], j as f64);
        }
    }
    SampledSignal::new(*grid, values, margin)
}

/// Value of the parabola through `(0, f0)`, `(1, f1)`, `(2, f2)` evaluated
/// `j` steps outward, at abscissa `-j`.
fn parabola_step(f0: f64, f1: f64, f2: f64, j: f64) -> f64 {
    f0 * (j + 1.0) * (j + 2.0) / 2.0 - f1 * j * (j + 2.0) + f2 * j * (j + 1.0) / 2.0
}

//! Uniform grids and the sample and coefficient containers built on them.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Result, SplineError};

/// Relative tolerance for deciding whether `h` divides `b - a` evenly.
pub const SPACING_REL_TOL: f64 = 1e-9;

/// A uniform grid of `n` nodes `x_r = a + r h` covering `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    a: f64,
    b: f64,
    h: f64,
    n: usize,
}

impl UniformGrid {
    /// Builds a grid over `[a, b]` with spacing `h`.
    ///
    /// # Errors
    ///
    /// Domain error when a bound or the spacing is non-finite, `b <= a`, or
    /// `h <= 0`; shape error when `h` does not divide `b - a` within
    /// [`SPACING_REL_TOL`] or the grid has fewer than four nodes.
    pub fn new(a: f64, b: f64, h: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !h.is_finite() {
            return Err(SplineError::Domain(format!(
                "grid parameters must be finite, got a = {a}, b = {b}, h = {h}"
            )));
        }
        if b <= a {
            return Err(SplineError::Domain(format!(
                "grid needs b > a, got a = {a}, b = {b}"
            )));
        }
        if h <= 0.0 {
            return Err(SplineError::Domain(format!("grid spacing must be positive, got h = {h}")));
        }
        let steps = (b - a) / h;
        let rounded = libm::round(steps);
        let scale = if rounded > 1.0 { rounded } else { 1.0 };
        if (steps - rounded).abs() > SPACING_REL_TOL * scale {
            return Err(SplineError::Shape(format!(
                "h = {h} does not divide [{a}, {b}] into whole intervals (got {steps} steps)"
            )));
        }
        let n = rounded as usize + 1;
        if n < 4 {
            return Err(SplineError::Shape(format!(
                "grid needs at least 4 nodes, got {n}"
            )));
        }
        Ok(UniformGrid { a, b, h, n })
    }

    /// Left endpoint of the interval.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Right endpoint of the interval.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Node spacing.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of knot intervals, `n - 1`.
    pub fn interval_count(&self) -> usize {
        self.n - 1
    }

    /// Position of node `r`, `a + r h`. Valid for any `r`, including the
    /// extension range outside `[a, b]`.
    pub fn node(&self, r: isize) -> f64 {
        self.a + r as f64 * self.h
    }
}

/// A signal sampled on a [`UniformGrid`], extended by `margin` nodes beyond
/// each end of `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: UniformGrid,
    values: Vec<f64>,
    margin: usize,
}

impl SampledSignal {
    /// Wraps raw storage of length `n + 2 margin`, ordered from node
    /// `-margin` through node `n - 1 + margin`.
    ///
    /// # Errors
    ///
    /// Shape error on a length mismatch, numeric error when any value is
    /// non-finite.
    pub fn new(grid: UniformGrid, values: Vec<f64>, margin: usize) -> Result<Self> {
        let expected = grid.node_count() + 2 * margin;
        if values.len() != expected {
            return Err(SplineError::Shape(format!(
                "signal storage holds {} values, expected n + 2*margin = {expected}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(SplineError::Numeric(format!(
                "signal value at storage index {bad} is not finite"
            )));
        }
        Ok(SampledSignal {
            grid,
            values,
            margin,
        })
    }

    /// The grid the interior samples live on.
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// Number of extension nodes on each side.
    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Sample at node `r`. Valid for `-margin <= r <= n - 1 + margin`;
    /// panics outside that range.
    pub fn value(&self, r: isize) -> f64 {
        let idx = r + self.margin as isize;
        assert!(
            idx >= 0 && (idx as usize) < self.values.len(),
            "node index {r} outside extended range"
        );
        self.values[idx as usize]
    }

    /// The interior samples `f_0 ..= f_(n-1)`, without the extension.
    pub fn interior(&self) -> &[f64] {
        &self.values[self.margin..self.margin + self.grid.node_count()]
    }

    /// Full extended storage, ordered from node `-margin`.
    pub fn storage(&self) -> &[f64] {
        &self.values
    }
}

/// Spline coefficients `b_i` for `i = -1, 0, ..., n` on a [`UniformGrid`]
/// with `n` nodes. Storage position is `i + index_offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    grid: UniformGrid,
    coeffs: Vec<f64>,
    index_offset: usize,
}

impl CoefficientVector {
    /// Wraps coefficient storage of length `n + 2`, ordered from `b_(-1)`.
    ///
    /// # Errors
    ///
    /// Shape error on a length mismatch.
    pub fn new(grid: UniformGrid, coeffs: Vec<f64>) -> Result<Self> {
        let expected = grid.node_count() + 2;
        if coeffs.len() != expected {
            return Err(SplineError::Shape(format!(
                "coefficient storage holds {} values, expected n + 2 = {expected}",
                coeffs.len()
            )));
        }
        Ok(CoefficientVector {
            grid,
            coeffs,
            index_offset: 1,
        })
    }

    /// The grid the coefficients belong to.
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// Coefficient `b_i` for `-1 <= i <= n`; panics outside that range.
    pub fn get(&self, i: isize) -> f64 {
        let idx = i + self.index_offset as isize;
        assert!(
            idx >= 0 && (idx as usize) < self.coeffs.len(),
            "coefficient index {i} outside -1 ..= n"
        );
        self.coeffs[idx as usize]
    }

    /// Coefficient `b_i`, or 0 outside the stored range. The zero branch
    /// mirrors the datapath's cleared shift register before the stream
    /// reaches a window.
    pub fn get_or_zero(&self, i: isize) -> f64 {
        let idx = i + self.index_offset as isize;
        if idx >= 0 && (idx as usize) < self.coeffs.len() {
            self.coeffs[idx as usize]
        } else {
            0.0
        }
    }

    /// Number of stored coefficients, `n + 2`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True only for an impossible empty container; kept for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients ordered from `b_(-1)`.
    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }
}

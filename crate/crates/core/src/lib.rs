//! Cubic B-spline signal approximation with a bit-accurate fixed-point
//! datapath model.
//!
//! The crate has three layers:
//!
//! * a floating-point reference: the cubic basis ([`basis`]), uniform grids
//!   and their containers ([`grid`]), boundary extension ([`extend`]), and
//!   the local three-point coefficient rule with four-term evaluation
//!   ([`spline`]);
//! * a fixed-point model of the parallel computing structure: quantization
//!   ([`fixed`]), the four-way basis ROM ([`rom`]), and the shift-register /
//!   multiplier / summator state machine with declared cycle accounting
//!   ([`datapath`]);
//! * error analysis: h^4 error bounds, empirical error measurement,
//!   convergence-order estimation, and a classical piecewise-cubic baseline
//!   ([`analysis`]).
//!
//! The library is `no_std` and allocates through `alloc`. File formats and
//! the command-line front end live in the companion `splinedsp-cli` crate.
//!
//! # Example
//!
//! ```
//! use splinedsp_core::extend::ExtensionRule;
//! use splinedsp_core::grid::UniformGrid;
//! use splinedsp_core::spline::{approximate_function, evaluate_spline_local};
//!
//! let grid = UniformGrid::new(0.0, 2.0, 1.0 / 32.0).unwrap();
//! let coeffs =
//!     approximate_function(|x| (1.0 + x).ln(), &grid, ExtensionRule::QuadraticExtrapolate)
//!         .unwrap();
//! let s = evaluate_spline_local(&coeffs, 1.0).unwrap();
//! assert!((s - 2.0f64.ln()).abs() < 1.25e-8);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod basis;
pub mod datapath;
pub mod error;
pub mod extend;
pub mod fixed;
pub mod grid;
pub mod rom;
pub mod spline;

pub use error::{Result, SplineError};

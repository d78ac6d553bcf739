//! The cubic B-spline basis function.
//!
//! `B3` is the centered cubic B-spline with unit knot spacing: a piecewise
//! cubic with support (-2, 2), peak value 2/3 at the origin, continuous
//! second derivative, and the partition-of-unity property
//! `sum_i B3(x - i) = 1` for every real `x`.

use alloc::format;

use crate::error::{Result, SplineError};

/// Degree of the spline basis implemented by this crate.
pub const SPLINE_DEGREE: u32 = 3;

/// Number of basis functions active at any evaluation point.
pub const SUPPORT_WIDTH: usize = 4;

/// Evaluates the cubic B-spline basis at `x`.
///
/// The value is 0 for `|x| >= 2`, `(2 - |x|)^3 / 6` for `1 <= |x| < 2`, and
/// `(1 + 3s + 3s^2 - 3s^3) / 6` with `s = 1 - |x|` for `|x| < 1`. Both signs
/// of `x` route through the same branch on `|x|`, so the symmetry
/// `eval_basis(x) == eval_basis(-x)` holds bit for bit.
///
/// # Errors
///
/// Returns a domain error when `x` is NaN or infinite.
pub fn eval_basis(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(SplineError::Domain(format!(
            "basis argument must be finite, got {x}"
        )));
    }
    Ok(b3(x))
}

/// Infallible core of [`eval_basis`]. Callers guarantee `x` is finite.
pub(crate) fn b3(x: f64) -> f64 {
    let t = if x < 0.0 { -x } else { x };
    if t >= 2.0 {
        0.0
    } else if t >= 1.0 {
        let d = 2.0 - t;
        d * d * d / 6.0
    } else {
        let s = 1.0 - t;
        (1.0 + 3.0 * s + 3.0 * s * s - 3.0 * s * s * s) / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn breakpoint_and_midpoint_values() {
        assert_eq!(eval_basis(0.0).unwrap(), 2.0 / 3.0);
        assert_eq!(eval_basis(1.0).unwrap(), 1.0 / 6.0);
        assert_eq!(eval_basis(-1.0).unwrap(), 1.0 / 6.0);
        assert_eq!(eval_basis(0.5).unwrap(), 2.875 / 6.0);
        assert_eq!(eval_basis(1.5).unwrap(), 0.125 / 6.0);
        assert_eq!(eval_basis(0.25).unwrap(), 3.671875 / 6.0);
        assert_eq!(eval_basis(0.75).unwrap(), 1.890625 / 6.0);
    }

    #[test]
    fn zero_outside_support() {
        for x in [2.0, -2.0, 2.0 + 1e-12, 7.5, -1.0e9] {
            assert_eq!(eval_basis(x).unwrap(), 0.0, "x = {x}");
        }
    }

    #[test]
    fn positive_inside_support() {
        let mut x = -1.999;
        while x < 2.0 {
            assert!(eval_basis(x).unwrap() > 0.0, "x = {x}");
            x += 0.013;
        }
    }

    #[test]
    fn symmetric_bit_for_bit() {
        let mut x = 0.0;
        while x < 2.5 {
            assert_eq!(
                eval_basis(x).unwrap().to_bits(),
                eval_basis(-x).unwrap().to_bits(),
                "x = {x}"
            );
            x += 0.001953125;
        }
    }

    #[test]
    fn bounded_by_peak_value() {
        let mut x = -2.5;
        while x < 2.5 {
            let v = eval_basis(x).unwrap();
            assert!((0.0..=2.0 / 3.0).contains(&v), "x = {x}, v = {v}");
            x += 0.0078125;
        }
    }

    #[test]
    fn continuous_at_breakpoints() {
        let delta = 1e-6;
        for x in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let jump = (eval_basis(x + delta).unwrap() - eval_basis(x).unwrap()).abs();
            assert!(jump <= 0.51 * delta, "x = {x}, jump = {jump}");
        }
    }

    #[test]
    fn partition_of_unity_on_a_sweep() {
        let mut x = -2.0;
        while x <= 2.0 {
            let sum: f64 = (-3..=3).map(|i| eval_basis(x - i as f64).unwrap()).sum();
            assert!((sum - 1.0).abs() <= 1e-12, "x = {x}, sum = {sum}");
            x += 0.000977;
        }
    }

    #[test]
    fn non_finite_arguments_are_domain_errors() {
        for x in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(matches!(eval_basis(x), Err(SplineError::Domain(_))));
        }
    }
}

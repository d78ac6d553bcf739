//! Worst-case bounds, measured errors, convergence estimation, and the
//! classical piecewise-cubic baseline the datapath is compared against.
//!
//! Both bounds share the shape `c h^4 M4`, where `M4` bounds the fourth
//! derivative of the signal over the interval: `5/384` for the spline and
//! `1/24` for a cubic polynomial piece interpolating four consecutive
//! nodes and used over its full three-interval span. Their quotient is
//! exactly `16/5`, so the spline bound is `3.2` times tighter at equal
//! spacing. Evaluating a cubic piece by Horner's rule takes three
//! dependent multiply-add pairs per sample, against the two-cycle sample
//! price of the parallel structure.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::datapath::{gcd, CycleCosts};
use crate::error::{Result, SplineError};
use crate::extend::ExtensionRule;
use crate::grid::UniformGrid;
use crate::spline::{approximate_function, evaluate_spline_local};

/// Cycles to evaluate one cubic piece by Horner's rule: three multiplies
/// and three additions, strictly dependent.
pub const HORNER_CYCLES: u64 = 6;

/// Measured errors at or below this are treated as roundoff noise, too
/// small to carry decade-over-decade order information.
pub const ORDER_ERROR_FLOOR: f64 = 1e-13;

/// Spline bound fraction `5/384`.
const SPLINE_BOUND_FRACTION: (u64, u64) = (5, 384);

/// Baseline bound fraction `1/24`.
const POLY_BOUND_FRACTION: (u64, u64) = (1, 24);

/// Inputs of the worst-case bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBoundInput {
    /// Node spacing.
    pub h: f64,
    /// Bound on the fourth derivative of the signal over the interval.
    pub fourth_derivative_max: f64,
}

impl ErrorBoundInput {
    fn validated(&self) -> Result<()> {
        if !self.h.is_finite() || self.h <= 0.0 {
            return Err(SplineError::Domain(format!(
                "spacing must be finite and positive, got {}",
                self.h
            )));
        }
        if !self.fourth_derivative_max.is_finite() || self.fourth_derivative_max < 0.0 {
            return Err(SplineError::Domain(format!(
                "fourth derivative bound must be finite and non-negative, got {}",
                self.fourth_derivative_max
            )));
        }
        Ok(())
    }

    fn h4(&self) -> f64 {
        let h2 = self.h * self.h;
        h2 * h2
    }
}

/// Worst-case spline approximation error, `(5/384) h^4 M4`.
///
/// # Errors
///
/// Domain error on a non-positive or non-finite spacing or derivative
/// bound.
pub fn spline_error_bound(input: &ErrorBoundInput) -> Result<f64> {
    input.validated()?;
    let (num, den) = SPLINE_BOUND_FRACTION;
    Ok(num as f64 / den as f64 * input.h4() * input.fourth_derivative_max)
}

/// Worst-case error of the cubic interpolation baseline, `(1/24) h^4 M4`.
///
/// # Errors
///
/// As [`spline_error_bound`].
pub fn poly_error_bound(input: &ErrorBoundInput) -> Result<f64> {
    input.validated()?;
    let (num, den) = POLY_BOUND_FRACTION;
    Ok(num as f64 / den as f64 * input.h4() * input.fourth_derivative_max)
}

/// Quotient of the baseline bound over the spline bound as a reduced
/// fraction. The fractions cancel exactly, so the quotient is spacing and
/// signal independent.
pub fn bound_ratio_rational() -> (u64, u64) {
    let num = POLY_BOUND_FRACTION.0 * SPLINE_BOUND_FRACTION.1;
    let den = POLY_BOUND_FRACTION.1 * SPLINE_BOUND_FRACTION.0;
    let d = gcd(num, den);
    (num / d, den / d)
}

/// Side-by-side accuracy and throughput comparison at one spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// Node spacing the bounds were evaluated at.
    pub h: f64,
    /// Fourth derivative bound the bounds were evaluated with.
    pub fourth_derivative_max: f64,
    /// Spline bound `(5/384) h^4 M4`.
    pub spline_bound: f64,
    /// Baseline bound `(1/24) h^4 M4`.
    pub poly_bound: f64,
    /// `poly_bound / spline_bound`, exactly `16/5`.
    pub bound_ratio: f64,
    /// Exact spline cycles per sample as a reduced fraction.
    pub spline_cycles_per_sample: (u64, u64),
    /// Baseline cycles per sample.
    pub poly_cycles_per_sample: u64,
    /// Baseline cycles over spline cycles per sample.
    pub speed_ratio: f64,
}

/// Evaluates both bounds and both throughput figures at one spacing.
///
/// # Errors
///
/// Domain error on invalid bound inputs; shape error when
/// `samples_per_segment` is zero.
pub fn compare_bounds(
    input: &ErrorBoundInput,
    costs: CycleCosts,
    samples_per_segment: usize,
) -> Result<ErrorReport> {
    if samples_per_segment == 0 {
        return Err(SplineError::Shape(
            "samples_per_segment must be at least 1".into(),
        ));
    }
    let spline_bound = spline_error_bound(input)?;
    let poly_bound = poly_error_bound(input)?;
    let (rn, rd) = bound_ratio_rational();

    let k = samples_per_segment as u64;
    let spline_num = costs.per_sample() * k + costs.shift;
    let d = gcd(spline_num, k);
    let spline_cycles_per_sample = (spline_num / d, k / d);
    let speed_ratio =
        (HORNER_CYCLES * spline_cycles_per_sample.1) as f64 / spline_cycles_per_sample.0 as f64;

    Ok(ErrorReport {
        h: input.h,
        fourth_derivative_max: input.fourth_derivative_max,
        spline_bound,
        poly_bound,
        bound_ratio: rn as f64 / rd as f64,
        spline_cycles_per_sample,
        poly_cycles_per_sample: HORNER_CYCLES,
        speed_ratio,
    })
}

/// Largest pointwise gap `|f(x) - approx(x)|` over `probes` uniform
/// points spanning `[a, b]`, endpoints included.
///
/// # Errors
///
/// Domain error when the interval is invalid, shape error when fewer than
/// two probes are requested, numeric error when either function produces
/// a non-finite value.
pub fn empirical_max_error<F, G>(f: F, approx: G, a: f64, b: f64, probes: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(SplineError::Domain(format!(
            "probe interval [{a}, {b}] is not a finite interval"
        )));
    }
    if probes < 2 {
        return Err(SplineError::Shape(format!(
            "at least 2 probes are required, got {probes}"
        )));
    }
    let mut max = 0.0f64;
    for j in 0..probes {
        let x = a + (b - a) * j as f64 / (probes - 1) as f64;
        let d = libm::fabs(f(x) - approx(x));
        if !d.is_finite() {
            return Err(SplineError::Numeric(format!(
                "non-finite value at probe x = {x}"
            )));
        }
        if d > max {
            max = d;
        }
    }
    Ok(max)
}

/// Probe window `[a + 2h, b - 2h]`, clear of the boundary-extension
/// influence near both ends.
///
/// # Errors
///
/// Domain error when the window is empty.
pub fn interior_window(a: f64, b: f64, h: f64) -> Result<(f64, f64)> {
    let lo = a + 2.0 * h;
    let hi = b - 2.0 * h;
    if !(lo < hi) {
        return Err(SplineError::Domain(format!(
            "interior window of [{a}, {b}] at spacing {h} is empty"
        )));
    }
    Ok((lo, hi))
}

/// Outcome of a convergence-order fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderEstimate {
    /// Least-squares slope of `ln error` against `ln h`.
    Slope(f64),
    /// No meaningful slope: an error sat at the roundoff floor, or the
    /// spacings did not differ.
    Undefined,
}

/// Measures the approximation error of `f` at each spacing and fits the
/// decay order.
///
/// All spacings are measured over the same window,
/// `[a + 2 h_max, b - 2 h_max]`, so boundary extension never enters the
/// comparison. Errors at or below [`ORDER_ERROR_FLOOR`] make the order
/// [`OrderEstimate::Undefined`].
///
/// Returns the per-spacing errors in the order given, with the estimate.
///
/// # Errors
///
/// Shape error on fewer than two spacings; domain error on an invalid
/// spacing or an empty window; grid construction errors for a spacing
/// that does not divide the interval.
pub fn convergence_order<F>(
    f: F,
    a: f64,
    b: f64,
    spacings: &[f64],
    probes: usize,
    rule: ExtensionRule,
) -> Result<(Vec<f64>, OrderEstimate)>
where
    F: Fn(f64) -> f64,
{
    if spacings.len() < 2 {
        return Err(SplineError::Shape(format!(
            "at least 2 spacings are required, got {}",
            spacings.len()
        )));
    }
    let mut h_max = 0.0f64;
    for &h in spacings {
        if !h.is_finite() || h <= 0.0 {
            return Err(SplineError::Domain(format!(
                "spacing must be finite and positive, got {h}"
            )));
        }
        if h > h_max {
            h_max = h;
        }
    }
    let (lo, hi) = interior_window(a, b, h_max)?;

    let mut errors = Vec::with_capacity(spacings.len());
    for &h in spacings {
        let grid = UniformGrid::new(a, b, h)?;
        let coeffs = approximate_function(&f, &grid, rule)?;
        let err = empirical_max_error(
            &f,
            |x| evaluate_spline_local(&coeffs, x).unwrap_or(f64::NAN),
            lo,
            hi,
            probes,
        )?;
        errors.push(err);
    }

    if errors.iter().any(|&e| e <= ORDER_ERROR_FLOOR) {
        return Ok((errors, OrderEstimate::Undefined));
    }
    let m = spacings.len() as f64;
    let xbar = spacings.iter().map(|&h| libm::log(h)).sum::<f64>() / m;
    let ybar = errors.iter().map(|&e| libm::log(e)).sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&h, &e) in spacings.iter().zip(errors.iter()) {
        let dx = libm::log(h) - xbar;
        sxx += dx * dx;
        sxy += dx * (libm::log(e) - ybar);
    }
    let estimate = if sxx == 0.0 {
        OrderEstimate::Undefined
    } else {
        OrderEstimate::Slope(sxy / sxx)
    };
    Ok((errors, estimate))
}

/// Built-in signals with known fourth-derivative bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `ln(1 + x)`, defined for `x > -1`.
    Ln1p,
    /// `sin x`.
    Sin,
    /// `e^x`.
    Exp,
}

impl TestFunction {
    /// Signal value at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TestFunction::Ln1p => libm::log1p(x),
            TestFunction::Sin => libm::sin(x),
            TestFunction::Exp => libm::exp(x),
        }
    }

    /// Exact maximum of the absolute fourth derivative over `[a, b]`.
    ///
    /// # Errors
    ///
    /// Domain error on an invalid interval, or for `ln(1 + x)` on an
    /// interval reaching `x <= -1` where the derivative is unbounded.
    pub fn fourth_derivative_max(&self, a: f64, b: f64) -> Result<f64> {
        if !a.is_finite() || !b.is_finite() || b < a {
            return Err(SplineError::Domain(format!(
                "invalid interval [{a}, {b}]"
            )));
        }
        match self {
            TestFunction::Ln1p => {
                if a <= -1.0 {
                    return Err(SplineError::Domain(format!(
                        "fourth derivative of ln(1 + x) is unbounded on [{a}, {b}]"
                    )));
                }
                let w = 1.0 + a;
                let w2 = w * w;
                Ok(6.0 / (w2 * w2))
            }
            TestFunction::Sin => {
                let k = libm::ceil((a - core::f64::consts::FRAC_PI_2) / core::f64::consts::PI);
                let crest = core::f64::consts::FRAC_PI_2 + k * core::f64::consts::PI;
                if crest <= b {
                    Ok(1.0)
                } else {
                    Ok(libm::fmax(libm::fabs(libm::sin(a)), libm::fabs(libm::sin(b))))
                }
            }
            TestFunction::Exp => Ok(libm::exp(b)),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestFunction::Ln1p => "ln1p",
            TestFunction::Sin => "sin",
            TestFunction::Exp => "exp",
        })
    }
}

impl FromStr for TestFunction {
    type Err = SplineError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ln1p" => Ok(TestFunction::Ln1p),
            "sin" => Ok(TestFunction::Sin),
            "exp" => Ok(TestFunction::Exp),
            other => Err(SplineError::Domain(format!(
                "unknown function {other:?}, expected ln1p, sin, or exp"
            ))),
        }
    }
}

/// Fits the cubic through four points by divided differences and returns
/// its power-basis coefficients, constant term first.
///
/// # Errors
///
/// Degenerate error on a repeated abscissa; numeric error on non-finite
/// inputs.
pub fn fit_classical_cubic(xs: &[f64; 4], ys: &[f64; 4]) -> Result<[f64; 4]> {
    for (x, y) in xs.iter().zip(ys.iter()) {
        if !x.is_finite() || !y.is_finite() {
            return Err(SplineError::Numeric(format!(
                "fit requires finite points, got ({x}, {y})"
            )));
        }
    }
    let mut dd = *ys;
    for level in 1..4 {
        for i in (level..4).rev() {
            let denom = xs[i] - xs[i - level];
            if denom == 0.0 {
                return Err(SplineError::Degenerate(format!(
                    "repeated abscissa {} in cubic fit",
                    xs[i]
                )));
            }
            dd[i] = (dd[i] - dd[i - 1]) / denom;
        }
    }
    let mut c = [0.0f64; 4];
    c[0] = dd[3];
    for j in (0..3).rev() {
        let mut next = [0.0f64; 4];
        for k in 0..3 {
            next[k + 1] += c[k];
            next[k] -= xs[j] * c[k];
        }
        next[0] += dd[j];
        c = next;
    }
    Ok(c)
}

/// Evaluates a power-basis cubic by Horner's rule, returning the value
/// with its cycle price.
pub fn horner_eval(coeffs: &[f64; 4], x: f64) -> (f64, u64) {
    let v = ((coeffs[3] * x + coeffs[2]) * x + coeffs[1]) * x + coeffs[0];
    (v, HORNER_CYCLES)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_at_the_reference_spacing() {
        let input = ErrorBoundInput {
            h: 1.0 / 32.0,
            fourth_derivative_max: 1.0,
        };
        let s = spline_error_bound(&input).unwrap();
        let p = poly_error_bound(&input).unwrap();
        assert!((s - 1.2417634328206381e-8).abs() < 1e-22, "spline bound {s:e}");
        assert!((p - 3.9736429850260414e-8).abs() < 1e-22, "poly bound {p:e}");
    }

    #[test]
    fn bound_quotient_is_exactly_sixteen_fifths() {
        assert_eq!(bound_ratio_rational(), (16, 5));
        let report = compare_bounds(
            &ErrorBoundInput {
                h: 0.125,
                fourth_derivative_max: 2.5,
            },
            CycleCosts::default(),
            10,
        )
        .unwrap();
        assert_eq!(report.bound_ratio, 3.2);
        // Dividing the evaluated bounds reintroduces rounding; the exact
        // quotient is only available through the reduced fraction.
        assert!((report.poly_bound / report.spline_bound - 3.2).abs() < 1e-14);
    }

    #[test]
    fn bounds_scale_as_the_fourth_power_of_spacing() {
        let at = |h: f64| {
            spline_error_bound(&ErrorBoundInput {
                h,
                fourth_derivative_max: 3.0,
            })
            .unwrap()
        };
        assert_eq!(at(1.0 / 16.0) / at(1.0 / 32.0), 16.0);
        assert_eq!(at(1.0 / 4.0) / at(1.0 / 8.0), 16.0);
    }

    #[test]
    fn invalid_bound_inputs_are_rejected() {
        for input in [
            ErrorBoundInput { h: 0.0, fourth_derivative_max: 1.0 },
            ErrorBoundInput { h: -0.5, fourth_derivative_max: 1.0 },
            ErrorBoundInput { h: f64::NAN, fourth_derivative_max: 1.0 },
            ErrorBoundInput { h: 0.1, fourth_derivative_max: -1.0 },
            ErrorBoundInput { h: 0.1, fourth_derivative_max: f64::INFINITY },
        ] {
            assert!(matches!(
                spline_error_bound(&input),
                Err(SplineError::Domain(_))
            ));
        }
    }

    #[test]
    fn default_prices_give_a_three_to_one_speed_quotient() {
        let report = compare_bounds(
            &ErrorBoundInput { h: 0.03125, fourth_derivative_max: 1.0 },
            CycleCosts::default(),
            10,
        )
        .unwrap();
        assert_eq!(report.spline_cycles_per_sample, (2, 1));
        assert_eq!(report.poly_cycles_per_sample, 6);
        assert_eq!(report.speed_ratio, 3.0);
    }

    #[test]
    fn shift_price_lands_on_the_per_sample_fraction() {
        let report = compare_bounds(
            &ErrorBoundInput { h: 0.03125, fourth_derivative_max: 1.0 },
            CycleCosts { multiply: 1, summator: 1, shift: 5 },
            10,
        )
        .unwrap();
        assert_eq!(report.spline_cycles_per_sample, (5, 2));
        assert_eq!(report.speed_ratio, 2.4);
        assert!(matches!(
            compare_bounds(
                &ErrorBoundInput { h: 0.03125, fourth_derivative_max: 1.0 },
                CycleCosts::default(),
                0,
            ),
            Err(SplineError::Shape(_))
        ));
    }

    #[test]
    fn probe_sweep_finds_the_largest_gap() {
        let err = empirical_max_error(|x| x, |x| x + 0.25 * libm::sin(x), 0.0, 2.0, 4001).unwrap();
        assert!((err - 0.25).abs() < 1e-6, "err = {err}");
        assert!(matches!(
            empirical_max_error(|x| x, |x| x, 0.0, 2.0, 1),
            Err(SplineError::Shape(_))
        ));
        assert!(matches!(
            empirical_max_error(|x| x, |x| x, 2.0, 2.0, 10),
            Err(SplineError::Domain(_))
        ));
        assert!(matches!(
            empirical_max_error(|x| x, |_| f64::NAN, 0.0, 2.0, 10),
            Err(SplineError::Numeric(_))
        ));
    }

    #[test]
    fn log_error_in_the_interior_window_at_the_reference_spacing() {
        let h = 1.0 / 32.0;
        let grid = UniformGrid::new(0.0, 2.0, h).unwrap();
        let coeffs = approximate_function(
            |x| libm::log1p(x),
            &grid,
            ExtensionRule::QuadraticExtrapolate,
        )
        .unwrap();
        let (lo, hi) = interior_window(0.0, 2.0, h).unwrap();
        assert_eq!((lo, hi), (0.0625, 1.9375));
        let err = empirical_max_error(
            |x| libm::log1p(x),
            |x| evaluate_spline_local(&coeffs, x).unwrap(),
            lo,
            hi,
            2001,
        )
        .unwrap();
        assert!(
            (1.15e-7..1.45e-7).contains(&err),
            "interior error {err:.4e} drifted from its frozen band"
        );
    }

    #[test]
    fn smooth_signals_converge_at_fourth_order() {
        let ladder = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0];
        let (errors, estimate) = convergence_order(
            |x| libm::log1p(x),
            0.0,
            2.0,
            &ladder,
            600,
            ExtensionRule::QuadraticExtrapolate,
        )
        .unwrap();
        assert_eq!(errors.len(), 4);
        for w in errors.windows(2) {
            assert!(w[1] < w[0], "errors must fall with spacing: {errors:?}");
        }
        match estimate {
            OrderEstimate::Slope(s) => {
                assert!((3.8..4.2).contains(&s), "slope {s}")
            }
            OrderEstimate::Undefined => panic!("expected a slope"),
        }
    }

    #[test]
    fn errors_at_the_roundoff_floor_give_no_order() {
        let ladder = [1.0 / 8.0, 1.0 / 16.0];
        let (errors, estimate) = convergence_order(
            |x| 0.5 * x - 1.0,
            0.0,
            2.0,
            &ladder,
            200,
            ExtensionRule::QuadraticExtrapolate,
        )
        .unwrap();
        assert!(errors.iter().all(|&e| e <= ORDER_ERROR_FLOOR), "{errors:?}");
        assert_eq!(estimate, OrderEstimate::Undefined);
        assert!(matches!(
            convergence_order(
                |x| x,
                0.0,
                2.0,
                &[0.125],
                200,
                ExtensionRule::QuadraticExtrapolate
            ),
            Err(SplineError::Shape(_))
        ));
    }

    #[test]
    fn window_excludes_two_intervals_per_side() {
        assert_eq!(interior_window(0.0, 2.0, 0.03125).unwrap(), (0.0625, 1.9375));
        assert!(matches!(
            interior_window(0.0, 1.0, 0.25),
            Err(SplineError::Domain(_))
        ));
    }

    #[test]
    fn derivative_bounds_are_exact_for_the_built_in_signals() {
        assert_eq!(TestFunction::Ln1p.fourth_derivative_max(0.0, 2.0).unwrap(), 6.0);
        assert_eq!(TestFunction::Ln1p.fourth_derivative_max(1.0, 2.0).unwrap(), 0.375);
        assert!(matches!(
            TestFunction::Ln1p.fourth_derivative_max(-1.0, 2.0),
            Err(SplineError::Domain(_))
        ));
        assert_eq!(TestFunction::Sin.fourth_derivative_max(0.0, 2.0).unwrap(), 1.0);
        assert_eq!(TestFunction::Sin.fourth_derivative_max(4.0, 5.0).unwrap(), 1.0);
        let grazing = TestFunction::Sin.fourth_derivative_max(2.0, 3.0).unwrap();
        assert!((grazing - libm::fabs(libm::sin(2.0))).abs() < 1e-15);
        let e2 = TestFunction::Exp.fourth_derivative_max(0.0, 2.0).unwrap();
        assert!((e2 - libm::exp(2.0)).abs() < 1e-15);
    }

    #[test]
    fn built_in_signal_names_round_trip() {
        for f in [TestFunction::Ln1p, TestFunction::Sin, TestFunction::Exp] {
            let name = alloc::string::ToString::to_string(&f);
            assert_eq!(name.parse::<TestFunction>().unwrap(), f);
        }
        assert!(matches!(
            "tan".parse::<TestFunction>(),
            Err(SplineError::Domain(_))
        ));
    }

    #[test]
    fn cubic_fit_reproduces_its_polynomial() {
        let p = |x: f64| 2.0 - x + 3.0 * x * x - 0.5 * x * x * x;
        let xs = [0.2, 0.7, 1.3, 1.9];
        let ys = [p(0.2), p(0.7), p(1.3), p(1.9)];
        let c = fit_classical_cubic(&xs, &ys).unwrap();
        for (got, want) in c.iter().zip([2.0, -1.0, 3.0, -0.5]) {
            assert!((got - want).abs() < 1e-12, "{c:?}");
        }
        let (v, cycles) = horner_eval(&c, 0.9);
        assert!((v - p(0.9)).abs() < 1e-12);
        assert_eq!(cycles, HORNER_CYCLES);
        assert!(matches!(
            fit_classical_cubic(&[0.0, 1.0, 1.0, 2.0], &ys),
            Err(SplineError::Degenerate(_))
        ));
        assert!(matches!(
            fit_classical_cubic(&[0.0, 1.0, 2.0, f64::NAN], &ys),
            Err(SplineError::Numeric(_))
        ));
    }

    #[test]
    fn fitted_piece_respects_the_baseline_bound_over_its_span() {
        let h = 1.0 / 32.0;
        let f = |x: f64| libm::log1p(x);
        let xs = [0.0, h, 2.0 * h, 3.0 * h];
        let ys = [f(xs[0]), f(xs[1]), f(xs[2]), f(xs[3])];
        let c = fit_classical_cubic(&xs, &ys).unwrap();
        let measured =
            empirical_max_error(f, |x| horner_eval(&c, x).0, 0.0, 3.0 * h, 2001).unwrap();
        let bound = poly_error_bound(&ErrorBoundInput {
            h,
            fourth_derivative_max: 6.0,
        })
        .unwrap();
        assert!(measured <= bound, "measured {measured:e} vs bound {bound:e}");
        assert!(measured >= bound / 10.0, "bound should be tight-ish: {measured:e}");
    }
}

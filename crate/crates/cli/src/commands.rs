//! The operations behind the subcommands.
//!
//! Artifacts go to `--output` or stdout. Run summaries go to stdout when
//! the artifact goes to a file and to stderr otherwise, so piping an
//! artifact never mixes the two.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use splinedsp_core::analysis::{
    bound_ratio_rational, compare_bounds, convergence_order, empirical_max_error,
    fit_classical_cubic, horner_eval, interior_window, ErrorBoundInput, OrderEstimate,
    TestFunction, HORNER_CYCLES,
};
use splinedsp_core::basis::eval_basis;
use splinedsp_core::datapath::{run_simulation_raw, CycleCosts, DatapathConfig};
use splinedsp_core::grid::UniformGrid;
use splinedsp_core::rom::{build_rom_bank, SEGMENT_LEFT_ENDPOINTS, SUBSECTION_COUNT};
use splinedsp_core::spline::{approximate_samples, evaluate_spline_local};
use splinedsp_core::SplineError;

use crate::config::{Command, RunConfig};
use crate::csvio::{self, ApproxRow, SignalFile, SimulateRow};
use crate::errors::AppError;
use crate::svg;

pub fn run(config: &RunConfig) -> Result<(), AppError> {
    match config.command {
        Command::Basis => cmd_basis(config),
        Command::Approx => cmd_approx(config),
        Command::Simulate => cmd_simulate(config),
        Command::Compare => cmd_compare(config),
        Command::Rom => cmd_rom(config),
    }
}

/// Tabulates the cubic basis function over the configured interval.
fn cmd_basis(config: &RunConfig) -> Result<(), AppError> {
    if config.probes < 2 {
        return Err(AppError::Core(SplineError::Shape(
            "a basis table needs at least 2 probes".into(),
        )));
    }
    let (a, b) = config.interval;
    let step = (b - a) / (config.probes - 1) as f64;
    let mut points = Vec::with_capacity(config.probes);
    for j in 0..config.probes {
        let x = if j + 1 == config.probes {
            b
        } else {
            a + j as f64 * step
        };
        points.push((x, eval_basis(x).map_err(AppError::Core)?));
    }
    let mut table = String::from("x,b3\n");
    for (x, y) in &points {
        table.push_str(&format!("{x},{y}\n"));
    }
    write_artifact(config, &table)?;
    write_svg(config, "cubic basis", &points)
}

/// Approximates the signal and tabulates spline values on the refined
/// grid, `samples_per_segment` rows per knot interval plus the endpoint.
fn cmd_approx(config: &RunConfig) -> Result<(), AppError> {
    let (grid, values, file) = prepare_signal(config)?;
    let coeffs =
        approximate_samples(&values, &grid, config.extension_rule).map_err(AppError::Core)?;
    let k = refinement(config)?;
    let step = grid.h() / k as f64;
    let fine = grid.interval_count() * k + 1;

    let mut rows = Vec::with_capacity(fine);
    let mut chart = Vec::with_capacity(fine);
    for j in 0..fine {
        let x = if j + 1 == fine {
            grid.b()
        } else {
            grid.a() + j as f64 * step
        };
        let s3 = evaluate_spline_local(&coeffs, x).map_err(AppError::Core)?;
        chart.push((x, s3));
        let row = match (&file, config.function) {
            (Some(signal), _) => {
                if j % k == 0 {
                    let i = j / k;
                    ApproxRow {
                        x: signal.x_text(i).to_string(),
                        f: signal.f_text(i).to_string(),
                        s3,
                        error: format!("{:e}", (s3 - signal.values()[i]).abs()),
                    }
                } else {
                    ApproxRow {
                        x: format!("{x}"),
                        f: String::new(),
                        s3,
                        error: String::new(),
                    }
                }
            }
            (None, Some(function)) => {
                let f = function.eval(x);
                ApproxRow {
                    x: format!("{x}"),
                    f: format!("{f}"),
                    s3,
                    error: format!("{:e}", (s3 - f).abs()),
                }
            }
            (None, None) => unreachable!("resolution guarantees a signal source"),
        };
        rows.push(row);
    }
    write_artifact(config, &csvio::render_approx_csv(&rows))?;

    let summary = match (&file, config.function) {
        (None, Some(function)) => {
            let (w0, w1) =
                interior_window(grid.a(), grid.b(), grid.h()).map_err(AppError::Core)?;
            let err = empirical_max_error(
                |x| function.eval(x),
                |x| evaluate_spline_local(&coeffs, x).unwrap_or(f64::NAN),
                w0,
                w1,
                config.probes,
            )
            .map_err(AppError::Core)?;
            format!(
                "interior max error: {err:e} over [{w0}, {w1}] ({} probes)",
                config.probes
            )
        }
        (Some(signal), _) => node_error_summary(signal, &grid, &coeffs)?,
        (None, None) => unreachable!("resolution guarantees a signal source"),
    };
    emit_summary(config, &summary);
    write_svg(config, "spline approximation", &chart)
}

/// Runs the fixed-point datapath and tabulates it against the float
/// four-lane reference, then reports the cycle accounting.
fn cmd_simulate(config: &RunConfig) -> Result<(), AppError> {
    let (grid, values, _file) = prepare_signal(config)?;
    let rom =
        build_rom_bank(config.samples_per_segment, config.format).map_err(AppError::Core)?;
    let datapath = DatapathConfig {
        rom,
        extension_rule: config.extension_rule,
        cycle_costs: CycleCosts::default(),
    };
    let (trace, report) = run_simulation_raw(&values, &grid, &datapath).map_err(AppError::Core)?;
    let coeffs =
        approximate_samples(&values, &grid, config.extension_rule).map_err(AppError::Core)?;

    let k = trace.samples_per_segment();
    let mut rows = Vec::with_capacity(trace.samples().len());
    let mut chart = Vec::with_capacity(trace.samples().len());
    for sample in trace.samples() {
        let float = window_value(coeffs.as_slice(), sample.index / k, sample.index % k, k);
        rows.push(SimulateRow {
            x: sample.x,
            fixed: sample.value,
            float,
            difference: (sample.value - float).abs(),
            transient: sample.transient,
        });
        chart.push((sample.x, sample.value));
    }

    let cps = report.cycles_per_sample;
    let summary = vec![
        format!("samples: {}", trace.samples().len()),
        format!("samples_per_segment: {k}"),
        format!("format: {}", trace.format()),
        format!("transient_samples: {}", trace.transient_len()),
        format!("saturation_events: {}", trace.saturation_events()),
        format!("rom_reads: {}", trace.rom_reads()),
        format!("total_cycles: {}", report.total_cycles),
        format!(
            "cycles_per_sample: {} ({}/{})",
            report.cycles_per_sample_f64(),
            cps.0,
            cps.1
        ),
        format!("cycle_model: {}", report.model_description),
    ];
    write_artifact(config, &csvio::render_simulate_csv(&summary, &rows))?;
    emit_summary(config, &summary.join("\n"));
    write_svg(config, "fixed-point output", &chart)
}

/// Reports error bounds, measured errors, cycle prices, and an observed
/// convergence order for a built-in function.
fn cmd_compare(config: &RunConfig) -> Result<(), AppError> {
    let function = config.function.expect("resolution guarantees a function");
    let (a, b) = config.interval;
    let h = config.h;
    let costs = CycleCosts::default();

    let unit = compare_bounds(
        &ErrorBoundInput {
            h,
            fourth_derivative_max: 1.0,
        },
        costs,
        config.samples_per_segment,
    )
    .map_err(AppError::Core)?;
    let m = function.fourth_derivative_max(a, b).map_err(AppError::Core)?;
    let analytic = compare_bounds(
        &ErrorBoundInput {
            h,
            fourth_derivative_max: m,
        },
        costs,
        config.samples_per_segment,
    )
    .map_err(AppError::Core)?;

    let grid = UniformGrid::new(a, b, h).map_err(AppError::Core)?;
    let coeffs = approximate_samples(
        &(0..grid.node_count())
            .map(|r| function.eval(grid.node(r as isize)))
            .collect::<Vec<f64>>(),
        &grid,
        config.extension_rule,
    )
    .map_err(AppError::Core)?;
    let (w0, w1) = interior_window(a, b, h).map_err(AppError::Core)?;
    let spline_err = empirical_max_error(
        |x| function.eval(x),
        |x| evaluate_spline_local(&coeffs, x).unwrap_or(f64::NAN),
        w0,
        w1,
        config.probes,
    )
    .map_err(AppError::Core)?;
    let cubic_err = per_interval_cubic_error(function, &grid, w0, w1, config.probes)?;

    let ladder = [4.0 * h, 2.0 * h, h];
    let (rung_errors, estimate) = convergence_order(
        |x| function.eval(x),
        a,
        b,
        &ladder,
        config.probes,
        config.extension_rule,
    )
    .map_err(AppError::Core)?;

    let spline_cps = unit.spline_cycles_per_sample;
    let (ratio_num, ratio_den) = bound_ratio_rational();
    let order_line = match estimate {
        OrderEstimate::Slope(slope) => format!("{slope:.4}"),
        OrderEstimate::Undefined => "undefined (errors at the accuracy floor)".into(),
    };
    let report = format!(
        "spline approximation vs classical per-interval cubic\n\
         \n\
         configuration\n\
         \x20 function:            {function}\n\
         \x20 interval:            [{a}, {b}]\n\
         \x20 h:                   {h} ({intervals} intervals)\n\
         \x20 samples_per_segment: {k}\n\
         \x20 extension:           {rule}\n\
         \x20 probes:              {probes}\n\
         \n\
         method error bounds, (5/384) h^4 M vs (1/24) h^4 M\n\
         \x20 M = 1:\n\
         \x20   spline bound:      {unit_spline:e}\n\
         \x20   cubic bound:       {unit_poly:e}\n\
         \x20 analytic M = {m}:\n\
         \x20   spline bound:      {m_spline:e}\n\
         \x20   cubic bound:       {m_poly:e}\n\
         \x20 bound ratio:         {ratio} (exact {rn}/{rd})\n\
         \n\
         measured max error over [{w0}, {w1}]\n\
         \x20 spline:              {spline_err:e}\n\
         \x20 per-interval cubic:  {cubic_err:e}\n\
         \x20 measured ratio:      {measured_ratio:.4}\n\
         \n\
         cycles per output sample\n\
         \x20 spline datapath:     {cps} ({cps_num}/{cps_den})\n\
         \x20 cubic horner:        {horner}\n\
         \x20 speed ratio:         {speed}\n\
         \n\
         convergence order over spacings {ladder_text}\n\
         \x20 max errors:          {rung_text}\n\
         \x20 estimated order:     {order_line}\n",
        function = function,
        a = a,
        b = b,
        h = h,
        intervals = grid.interval_count(),
        k = config.samples_per_segment,
        rule = config.extension_rule,
        probes = config.probes,
        unit_spline = unit.spline_bound,
        unit_poly = unit.poly_bound,
        m = m,
        m_spline = analytic.spline_bound,
        m_poly = analytic.poly_bound,
        ratio = unit.bound_ratio,
        rn = ratio_num,
        rd = ratio_den,
        w0 = w0,
        w1 = w1,
        spline_err = spline_err,
        cubic_err = cubic_err,
        measured_ratio = cubic_err / spline_err,
        cps = unit.spline_cycles_per_sample.0 as f64 / unit.spline_cycles_per_sample.1 as f64,
        cps_num = spline_cps.0,
        cps_den = spline_cps.1,
        horner = HORNER_CYCLES,
        speed = unit.speed_ratio,
        ladder_text = join_numbers(&ladder),
        rung_text = join_exponential(&rung_errors),
        order_line = order_line,
    );
    write_artifact(config, &report)?;
    write_svg(
        config,
        "max error vs spacing",
        &ladder
            .iter()
            .copied()
            .zip(rung_errors.iter().copied())
            .collect::<Vec<(f64, f64)>>(),
    )
}

/// Exports the four ROM subsections as a hex image.
fn cmd_rom(config: &RunConfig) -> Result<(), AppError> {
    let rom =
        build_rom_bank(config.samples_per_segment, config.format).map_err(AppError::Core)?;
    write_artifact(config, &rom.render_image())?;
    let mut points = Vec::new();
    for lane in 0..SUBSECTION_COUNT {
        for addr in 0..rom.samples_per_segment() {
            points.push((rom.sample_point(lane, addr), rom.dequantized(lane, addr)));
        }
    }
    points.sort_by(|p, q| p.0.total_cmp(&q.0));
    write_svg(config, "dequantized basis samples", &points)
}

/// The signal a data-bearing command works on: its grid, its node
/// ordinates, and the parsed file when it came from one.
fn prepare_signal(
    config: &RunConfig,
) -> Result<(UniformGrid, Vec<f64>, Option<SignalFile>), AppError> {
    if let Some(path) = &config.input_path {
        let file = csvio::read_signal(path)?;
        let grid = *file.grid();
        let values = file.values().to_vec();
        Ok((grid, values, Some(file)))
    } else {
        let function = config.function.expect("resolution guarantees a source");
        let (a, b) = config.interval;
        let grid = UniformGrid::new(a, b, config.h).map_err(AppError::Core)?;
        let values = (0..grid.node_count())
            .map(|r| function.eval(grid.node(r as isize)))
            .collect();
        Ok((grid, values, None))
    }
}

fn refinement(config: &RunConfig) -> Result<usize, AppError> {
    if config.samples_per_segment == 0 {
        Err(AppError::Core(SplineError::Shape(
            "samples_per_segment must be at least 1".into(),
        )))
    } else {
        Ok(config.samples_per_segment)
    }
}

/// Float analog of one datapath output: the same four-lane window over
/// the unquantized coefficient stream, including the cleared slots of the
/// startup transient.
fn window_value(stream: &[f64], segment: usize, addr: usize, samples_per_segment: usize) -> f64 {
    let t = addr as f64 / samples_per_segment as f64;
    let mut acc = 0.0;
    for lane in 0..SUBSECTION_COUNT {
        let position = segment as isize - 3 + lane as isize;
        let coeff = if position >= 0 && (position as usize) < stream.len() {
            stream[position as usize]
        } else {
            0.0
        };
        let weight = eval_basis(SEGMENT_LEFT_ENDPOINTS[lane] + t)
            .expect("basis abscissa is finite by construction");
        acc += coeff * weight;
    }
    acc
}

/// Largest spline error at the nodes of a file-born signal, measured
/// inside the interior window when it is non-empty and over all nodes
/// otherwise.
fn node_error_summary(
    signal: &SignalFile,
    grid: &UniformGrid,
    coeffs: &splinedsp_core::grid::CoefficientVector,
) -> Result<String, AppError> {
    let window = interior_window(grid.a(), grid.b(), grid.h()).ok();
    let mut max_err = 0.0f64;
    let mut counted = 0usize;
    for i in 0..signal.len() {
        let x = grid.node(i as isize);
        if let Some((w0, w1)) = window {
            if x < w0 || x > w1 {
                continue;
            }
        }
        let s3 = evaluate_spline_local(coeffs, x).map_err(AppError::Core)?;
        max_err = max_err.max((s3 - signal.values()[i]).abs());
        counted += 1;
    }
    Ok(match window {
        Some((w0, w1)) => {
            format!("interior max node error: {max_err:e} over [{w0}, {w1}] ({counted} nodes)")
        }
        None => format!("max node error: {max_err:e} over all {counted} nodes"),
    })
}

/// Worst error of cubic fits through node quadruples, probed inside
/// `[w0, w1]`. Interval `k` uses nodes `k-1 ..= k+2`, shifted inward at
/// the edges.
fn per_interval_cubic_error(
    function: TestFunction,
    grid: &UniformGrid,
    w0: f64,
    w1: f64,
    probes: usize,
) -> Result<f64, AppError> {
    let n = grid.interval_count();
    let per_interval = (probes / n).max(8);
    let mut max_err = 0.0f64;
    for k in 0..n {
        let lo = grid.node(k as isize).max(w0);
        let hi = grid.node(k as isize + 1).min(w1);
        if lo >= hi {
            continue;
        }
        let start = (k as isize - 1).clamp(0, n as isize - 3);
        let xs: [f64; 4] = std::array::from_fn(|j| grid.node(start + j as isize));
        let fs: [f64; 4] = xs.map(|x| function.eval(x));
        let poly = fit_classical_cubic(&xs, &fs).map_err(AppError::Core)?;
        let err = empirical_max_error(
            |x| function.eval(x),
            |x| horner_eval(&poly, x).0,
            lo,
            hi,
            per_interval,
        )
        .map_err(AppError::Core)?;
        max_err = max_err.max(err);
    }
    Ok(max_err)
}

/// Writes `contents` to the configured output, or stdout when none is
/// set.
fn write_artifact(config: &RunConfig, contents: &str) -> Result<(), AppError> {
    match &config.output_path {
        Some(path) => fs::write(path, contents).map_err(|source| AppError::io(path, source)),
        None => io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|source| AppError::io(Path::new("<stdout>"), source)),
    }
}

/// Prints a run summary where it cannot corrupt the artifact: stdout when
/// the artifact goes to a file, stderr when it goes to stdout.
fn emit_summary(config: &RunConfig, summary: &str) {
    if config.output_path.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
}

fn write_svg(config: &RunConfig, title: &str, points: &[(f64, f64)]) -> Result<(), AppError> {
    if let Some(path) = &config.svg_path {
        fs::write(path, svg::render_chart(title, points))
            .map_err(|source| AppError::io(path, source))?;
    }
    Ok(())
}

fn join_numbers(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<String>>()
        .join(", ")
}

fn join_exponential(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:e}"))
        .collect::<Vec<String>>()
        .join(", ")
}

//! Signal CSV ingest and artifact CSV rendering.
//!
//! A signal file is a CSV whose header starts with `x,f`. Lines beginning
//! with `#` are comments, blank lines and extra columns are tolerated, and
//! data rows with an empty `f` field are skipped, so a table written by
//! the `approx` command re-ingests as the signal it was built from. Node
//! abscissas must increase strictly and be uniformly spaced to within a
//! relative `1e-9`; the original column text is kept so node rows can be
//! re-rendered byte for byte.

use std::fs;
use std::path::Path;

use splinedsp_core::grid::UniformGrid;
use splinedsp_core::SplineError;

use crate::errors::AppError;

/// Relative tolerance of the uniform-spacing check at ingest.
pub const SPACING_TOLERANCE: f64 = 1e-9;

/// Fewest nodes a signal file may carry: one knot interval plus the four
/// coefficient lanes the evaluation window spans.
pub const MIN_SIGNAL_NODES: usize = 4;

/// A parsed signal file: the grid, the node ordinates, and the original
/// text of both columns.
#[derive(Clone, Debug)]
pub struct SignalFile {
    grid: UniformGrid,
    values: Vec<f64>,
    x_text: Vec<String>,
    f_text: Vec<String>,
}

impl SignalFile {
    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn x_text(&self, i: usize) -> &str {
        &self.x_text[i]
    }

    pub fn f_text(&self, i: usize) -> &str {
        &self.f_text[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }
}

/// Reads and validates a signal file.
pub fn read_signal(path: &Path) -> Result<SignalFile, AppError> {
    let text = fs::read_to_string(path).map_err(|source| AppError::io(path, source))?;
    parse_signal(&text, path)
}

/// Parses signal CSV text; `path` only labels diagnostics.
pub fn parse_signal(text: &str, path: &Path) -> Result<SignalFile, AppError> {
    let mut xs: Vec<f64> = Vec::new();
    let mut values = Vec::new();
    let mut x_text = Vec::new();
    let mut f_text = Vec::new();
    let mut row_lines = Vec::new();
    let mut header_seen = false;

    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',');
        let first = fields.next().unwrap_or("").trim();
        let second = fields.next().map(str::trim);
        if !header_seen {
            if first != "x" || second != Some("f") {
                return Err(AppError::parse(
                    path,
                    line_no,
                    format!("header must begin with `x,f`, got `{line}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        let second = match second {
            Some(field) => field,
            None => {
                return Err(AppError::parse(
                    path,
                    line_no,
                    "expected at least two fields".into(),
                ))
            }
        };
        if second.is_empty() {
            continue;
        }
        let x = parse_field(first, "x", path, line_no)?;
        let f = parse_field(second, "f", path, line_no)?;
        if let Some(&last) = xs.last() {
            if x <= last {
                return Err(AppError::parse(
                    path,
                    line_no,
                    format!("x values must increase strictly, got {x} after {last}"),
                ));
            }
        }
        xs.push(x);
        values.push(f);
        x_text.push(first.to_string());
        f_text.push(second.to_string());
        row_lines.push(line_no);
    }

    if !header_seen {
        return Err(AppError::parse(path, 1, "file has no `x,f` header".into()));
    }
    if xs.len() < MIN_SIGNAL_NODES {
        return Err(AppError::Core(SplineError::Shape(format!(
            "signal file provides {} nodes; at least {MIN_SIGNAL_NODES} are needed",
            xs.len()
        ))));
    }

    let span = xs[xs.len() - 1] - xs[0];
    let h = span / (xs.len() - 1) as f64;
    for i in 1..xs.len() {
        let step = xs[i] - xs[i - 1];
        if (step - h).abs() > SPACING_TOLERANCE * h {
            return Err(AppError::parse(
                path,
                row_lines[i],
                format!("node spacing {step} deviates from the uniform spacing {h}"),
            ));
        }
    }

    let grid = UniformGrid::new(xs[0], xs[xs.len() - 1], h).map_err(AppError::Core)?;
    if grid.node_count() != xs.len() {
        return Err(AppError::Core(SplineError::Shape(format!(
            "grid over [{}, {}] at spacing {h} holds {} nodes, file holds {}",
            xs[0],
            xs[xs.len() - 1],
            grid.node_count(),
            xs.len()
        ))));
    }

    Ok(SignalFile {
        grid,
        values,
        x_text,
        f_text,
    })
}

fn parse_field(text: &str, column: &str, path: &Path, line: usize) -> Result<f64, AppError> {
    let value: f64 = text.parse().map_err(|_| {
        AppError::parse(
            path,
            line,
            format!("column {column}: `{text}` is not a number"),
        )
    })?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(AppError::parse(
            path,
            line,
            format!("column {column}: `{text}` is not finite"),
        ))
    }
}

/// One rendered row of an approximation table. The `f` and `error` fields
/// stay empty on refined rows of a file-born signal, where the true
/// ordinate is unknown.
#[derive(Clone, Debug)]
pub struct ApproxRow {
    pub x: String,
    pub f: String,
    pub s3: f64,
    pub error: String,
}

pub fn render_approx_csv(rows: &[ApproxRow]) -> String {
    let mut out = String::from("x,f,s3,error\n");
    for row in rows {
        out.push_str(&format!("{},{},{},{}\n", row.x, row.f, row.s3, row.error));
    }
    out
}

/// One rendered row of a datapath simulation table.
#[derive(Clone, Copy, Debug)]
pub struct SimulateRow {
    pub x: f64,
    pub fixed: f64,
    pub float: f64,
    pub difference: f64,
    pub transient: bool,
}

pub fn render_simulate_csv(summary: &[String], rows: &[SimulateRow]) -> String {
    let mut out = String::new();
    for line in summary {
        out.push_str(&format!("# {line}\n"));
    }
    out.push_str("x,fixed,float,difference,transient\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.x,
            row.fixed,
            row.float,
            row.difference,
            u8::from(row.transient)
        ));
    }
    out
}

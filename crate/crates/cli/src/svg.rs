//! Minimal standalone SVG line charts.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

/// Renders the points as a single polyline in a fixed frame, with the
/// data range labelled in the corners. Non-finite points are dropped.
pub fn render_chart(title: &str, points: &[(f64, f64)]) -> String {
    let finite: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let (x_min, x_max) = padded_span(finite.iter().map(|p| p.0));
    let (y_min, y_max) = padded_span(finite.iter().map(|p| p.1));

    let map_x = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let map_y = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

    let mut coords = String::new();
    for (x, y) in &finite {
        coords.push_str(&format!("{:.2},{:.2} ", map_x(*x), map_y(*y)));
    }

    let x0 = MARGIN;
    let x1 = WIDTH - MARGIN;
    let y0 = HEIGHT - MARGIN;
    let y1 = MARGIN;
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "  <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "  <text x=\"{cx}\" y=\"26\" text-anchor=\"middle\" ",
            "font-family=\"monospace\" font-size=\"14\">{title}</text>\n",
            "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n",
            "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n",
            "  <polyline points=\"{coords}\" fill=\"none\" stroke=\"black\" ",
            "stroke-width=\"1\"/>\n",
            "  <text x=\"{x0}\" y=\"{below}\" font-family=\"monospace\" ",
            "font-size=\"11\">{x_min}</text>\n",
            "  <text x=\"{x1}\" y=\"{below}\" text-anchor=\"end\" ",
            "font-family=\"monospace\" font-size=\"11\">{x_max}</text>\n",
            "  <text x=\"{left}\" y=\"{y0}\" text-anchor=\"end\" ",
            "font-family=\"monospace\" font-size=\"11\">{y_min}</text>\n",
            "  <text x=\"{left}\" y=\"{y1}\" text-anchor=\"end\" ",
            "font-family=\"monospace\" font-size=\"11\">{y_max}</text>\n",
            "</svg>\n",
        ),
        w = WIDTH,
        h = HEIGHT,
        cx = WIDTH / 2.0,
        title = escape(title),
        x0 = x0,
        x1 = x1,
        y0 = y0,
        y1 = y1,
        below = y0 + 18.0,
        left = x0 - 6.0,
        coords = coords.trim_end(),
        x_min = trimmed(x_min),
        x_max = trimmed(x_max),
        y_min = trimmed(y_min),
        y_max = trimmed(y_max),
    )
}

/// Data range, widened so a flat or empty series still spans a drawable
/// box.
fn padded_span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn trimmed(value: f64) -> String {
    format!("{value:.6}")
        .trim_end_matches('0')
        .trim_end_matches('.')
        .to_string()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_is_standalone_svg_with_one_polyline() {
        let chart = render_chart("basis", &[(0.0, 0.0), (1.0, 0.5), (2.0, 0.0)]);
        assert!(chart.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(chart.ends_with("</svg>\n"));
        assert_eq!(chart.matches("<polyline").count(), 1);
        assert!(chart.contains(">basis</text>"));
    }

    #[test]
    fn points_stay_inside_the_frame() {
        let chart = render_chart("t", &[(-3.0, -7.0), (4.0, 11.0)]);
        let points = chart
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        for pair in points.split_whitespace() {
            let (x, y) = pair.split_once(',').unwrap();
            let x: f64 = x.parse().unwrap();
            let y: f64 = y.parse().unwrap();
            assert!((0.0..=WIDTH).contains(&x));
            assert!((0.0..=HEIGHT).contains(&y));
        }
    }

    #[test]
    fn flat_and_empty_series_still_render() {
        let flat = render_chart("flat", &[(0.0, 2.0), (1.0, 2.0)]);
        assert!(flat.contains("1.5"));
        assert!(flat.contains("2.5"));
        let empty = render_chart("empty", &[]);
        assert!(empty.contains("<polyline"));
    }

    #[test]
    fn markup_in_titles_is_escaped() {
        let chart = render_chart("a<b&c", &[(0.0, 0.0), (1.0, 1.0)]);
        assert!(chart.contains("a&lt;b&amp;c"));
    }
}

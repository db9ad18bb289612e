//! Static SVG rendering of line plots and heatmaps.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 48.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axis_labels(out: &mut String, (x0, x1): (f64, f64), (y0, y1): (f64, f64)) {
    let _ = write!(
        out,
        "<rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"black\"/>\n\
         <g font-family=\"sans-serif\" font-size=\"11\">\n\
         <text x=\"{m}\" y=\"{yb}\" text-anchor=\"start\">{x0:.3}</text>\n\
         <text x=\"{xr}\" y=\"{yb}\" text-anchor=\"end\">{x1:.3}</text>\n\
         <text x=\"{xl}\" y=\"{yt}\" text-anchor=\"end\">{y1:.3e}</text>\n\
         <text x=\"{xl}\" y=\"{ybot}\" text-anchor=\"end\">{y0:.3e}</text>\n</g>\n",
        m = MARGIN,
        w = WIDTH - 2.0 * MARGIN,
        h = HEIGHT - 2.0 * MARGIN,
        yb = HEIGHT - MARGIN + 16.0,
        xr = WIDTH - MARGIN,
        xl = MARGIN - 4.0,
        yt = MARGIN + 4.0,
        ybot = HEIGHT - MARGIN,
    );
}

/// One polyline per `(label, ys)` over the shared abscissae `xs`.
pub fn line_chart(title: &str, xs: &[f64], series: &[(String, Vec<f64>)]) -> String {
    let xb = bounds(xs.iter().copied());
    let yb = bounds(series.iter().flat_map(|(_, ys)| ys.iter().copied()));
    let px = |x: f64| MARGIN + (x - xb.0) / (xb.1 - xb.0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - yb.0) / (yb.1 - yb.0) * (HEIGHT - 2.0 * MARGIN);
    let mut out = String::new();
    header(&mut out, title);
    axis_labels(&mut out, xb, yb);
    for (k, (label, ys)) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = xs
            .iter()
            .zip(ys)
            .filter(|(_, y)| y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>",
            pts.join(" ")
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.0}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{colour}\">{}</text>",
            WIDTH - MARGIN + 4.0,
            MARGIN + 14.0 * (k as f64 + 1.0),
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// `values[i][j]` at `(xs[j], ys[i])`, blue (low) to red (high).
pub fn heatmap(title: &str, xs: &[f64], ys: &[f64], values: &[Vec<f64>]) -> String {
    let vb = bounds(values.iter().flatten().copied());
    let (nx, ny) = (xs.len().max(1) as f64, ys.len().max(1) as f64);
    let cw = (WIDTH - 2.0 * MARGIN) / nx;
    let ch = (HEIGHT - 2.0 * MARGIN) / ny;
    let mut out = String::new();
    header(&mut out, title);
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = if v.is_finite() { (v - vb.0) / (vb.1 - vb.0) } else { 0.0 };
            let (r, b) = ((255.0 * t).round() as u8, (255.0 * (1.0 - t)).round() as u8);
            let _ = writeln!(
                out,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"rgb({r},64,{b})\"/>",
                MARGIN + j as f64 * cw,
                HEIGHT - MARGIN - (i as f64 + 1.0) * ch,
                cw + 0.05,
                ch + 0.05
            );
        }
    }
    axis_labels(&mut out, bounds(xs.iter().copied()), bounds(ys.iter().copied()));
    let _ = writeln!(
        out,
        "<text x=\"{:.0}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">range [{:.3e}, {:.3e}]</text>",
        WIDTH / 2.0,
        HEIGHT - 8.0,
        vb.0,
        vb.1
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_chart_is_well_formed_and_deterministic() {
        let xs = [0.0, 1.0, 2.0];
        let s = vec![("a<b".to_string(), vec![1.0, f64::NAN, 3.0])];
        let svg = line_chart("t", &xs, &s);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains("a&lt;b"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg, line_chart("t", &xs, &s));
    }

    #[test]
    fn heatmap_has_one_cell_per_value() {
        let svg = heatmap("h", &[0.0, 1.0], &[0.0, 1.0, 2.0], &[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 5.0]]);
        assert_eq!(svg.matches("<rect x=").count(), 6 + 1);
    }

    #[test]
    fn constant_data_does_not_divide_by_zero() {
        let svg = line_chart("c", &[1.0], &[("k".into(), vec![2.0])]);
        assert!(!svg.contains("NaN"));
    }
}

//! Flat-file emission: the canonical CSV schema and minimal SVG line plots.

use crate::config::{EntropyUnits, Quantity};
use quenchosc::dynamics::SamplePoint;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

/// Canonical CSV header. Floats use shortest round-trip formatting with a '.'
/// decimal separator; `diverged` is 0/1; lines end with LF.
pub const CSV_HEADER: &str = "t,S_L,S_von,negativity,U1,U2,alpha,gamma,diverged";

/// Renders the canonical CSV for one evolution.
pub fn render_csv(points: &[SamplePoint], units: EntropyUnits) -> String {
    let scale = units.scale();
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        let r = &p.record;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.t,
            r.s_l,
            r.s_von * scale,
            r.negativity * scale,
            r.u1,
            r.u2,
            r.alpha,
            r.gamma,
            u8::from(r.diverged)
        );
    }
    out
}

/// Writes the canonical CSV for one evolution.
pub fn write_csv(path: &Path, points: &[SamplePoint], units: EntropyUnits) -> io::Result<()> {
    std::fs::write(path, render_csv(points, units))
}

/// One labelled curve of a line plot.
pub struct Curve {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Extracts a quantity curve from an evolution.
pub fn curve(label: &str, points: &[SamplePoint], q: Quantity, units: EntropyUnits) -> Curve {
    Curve {
        label: label.to_string(),
        points: points.iter().map(|p| (p.record.t, q.extract(p, units))).collect(),
    }
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 48.0;

fn data_range(curves: &[Curve], pick: impl Fn(&(f64, f64)) -> f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in curves {
        for p in &c.points {
            let v = pick(p);
            if v.is_finite() {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Renders a minimal multi-curve SVG line plot.
pub fn render_svg(title: &str, y_label: &str, curves: &[Curve]) -> String {
    let (x_lo, x_hi) = data_range(curves, |p| p.0);
    let (y_lo, y_hi) = {
        let (lo, hi) = data_range(curves, |p| p.1);
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    };
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let to_x = |v: f64| MARGIN_L + (v - x_lo) / (x_hi - x_lo) * plot_w;
    let to_y = |v: f64| MARGIN_T + (y_hi - v) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        MARGIN_L + plot_w / 2.0,
        xml_escape(title)
    );

    // Axes and ticks.
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" \
         fill=\"none\" stroke=\"#444\"/>"
    );
    for k in 0..=5 {
        let f = k as f64 / 5.0;
        let xv = x_lo + f * (x_hi - x_lo);
        let yv = y_lo + f * (y_hi - y_lo);
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
            to_x(xv),
            HEIGHT - MARGIN_B + 16.0,
            tick(xv)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>",
            MARGIN_L - 6.0,
            to_y(yv) + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">t</text>",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        xml_escape(y_label)
    );

    // Curves and legend.
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut path = String::with_capacity(12 * c.points.len());
        for (t, v) in &c.points {
            if v.is_finite() {
                let _ = write!(path, "{:.2},{:.2} ", to_x(*t), to_y(*v));
            }
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.2\" points=\"{}\"/>",
            path.trim_end()
        );
        let lx = MARGIN_L + 10.0 + 130.0 * (i % 5) as f64;
        let ly = MARGIN_T + 14.0 + 14.0 * (i / 5) as f64;
        let _ = writeln!(
            svg,
            "<line x1=\"{lx:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/><text x=\"{:.1}\" y=\"{:.1}\">{}</text>",
            ly - 4.0,
            lx + 18.0,
            ly - 4.0,
            lx + 24.0,
            ly,
            xml_escape(&c.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes a minimal multi-curve SVG line plot.
pub fn write_svg(path: &Path, title: &str, y_label: &str, curves: &[Curve]) -> io::Result<()> {
    std::fs::write(path, render_svg(title, y_label, curves))
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

//! Static SVG views of discrepancy curves and mirror solution lattices.

use std::fmt::Write as _;
use std::path::Path;

use super::format::format_short;
use super::report::{ExperimentReport, ExperimentResult, OutputError};
use crate::analysis::DiscrepancyCurve;
use crate::models::ParameterRange;
use crate::solver::{Classification, SolutionSet};

const WIDTH: f64 = 720.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;

struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        LEFT + (v - self.lo) / (self.hi - self.lo) * (WIDTH - LEFT - RIGHT)
    }
}

/// Renders a report as SVG text.
pub fn render_svg(report: &ExperimentReport) -> Result<String, OutputError> {
    let result = report.result.as_ref().ok_or(OutputError::NoResult)?;
    let range = report.config.as_ref().map(|c| c.range).unwrap_or_default();
    match result {
        ExperimentResult::DiscrepancyScan { datum, curve } => {
            Ok(curve_svg(curve, datum.truth, range))
        }
        ExperimentResult::MirrorInvert { datum, solutions } => Ok(lattice_svg(
            &[(datum.wavenumber.unwrap_or(0.0), solutions)],
            &[],
            datum.truth,
            range,
        )),
        ExperimentResult::MultiFrequency(mf) => {
            let rows: Vec<(f64, &SolutionSet)> = mf
                .per_frequency
                .iter()
                .map(|f| (f.wavenumber, &f.solutions))
                .collect();
            let truth = report
                .config
                .as_ref()
                .and_then(|c| c.truth)
                .unwrap_or(f64::NAN);
            Ok(lattice_svg(&rows, &mf.intersection, truth, range))
        }
        other => Err(OutputError::PlotUnsupported(other.kind().name().into())),
    }
}

/// Writes the SVG view of a report; only scan, mirror and multi-frequency
/// reports have one.
pub fn emit_plot(report: &ExperimentReport, path: &Path) -> Result<(), OutputError> {
    let svg = render_svg(report)?;
    std::fs::write(path, svg).map_err(|e| OutputError::io(path, e))
}

fn header(height: f64, title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{height}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{title}</text>"#,
        WIDTH / 2.0
    );
    s
}

fn x_axis(s: &mut String, frame: &Frame, y: f64, label: &str) {
    let _ = writeln!(
        s,
        r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#,
        frame.x(frame.lo),
        frame.x(frame.hi)
    );
    for i in 0..=4 {
        let v = frame.lo + (frame.hi - frame.lo) * i as f64 / 4.0;
        let x = frame.x(v);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y + 5.0,
            y + 18.0,
            format_short(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
        frame.x(0.5 * (frame.lo + frame.hi)),
        y + 34.0
    );
}

fn curve_svg(curve: &DiscrepancyCurve, truth: f64, range: ParameterRange) -> String {
    let height = 420.0;
    let bottom = height - 60.0;
    let frame = Frame {
        lo: range.lo(),
        hi: range.hi(),
    };
    let j_max = curve.values.iter().copied().fold(0.0, f64::max);
    let j_max = if j_max > 0.0 { j_max } else { 1.0 };
    let y = |j: f64| bottom - j / j_max * (bottom - TOP);

    let mut s = header(height, "Discrepancy J(eps) = |E(eps) - d|^2");
    x_axis(&mut s, &frame, bottom, "eps");
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{bottom:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text><text x="{:.2}" y="{bottom:.2}" text-anchor="end">0</text>"#,
        LEFT - 6.0,
        TOP + 4.0,
        format_short(j_max),
        LEFT - 6.0
    );
    if range.contains(truth) {
        let x = frame.x(truth);
        let _ = writeln!(
            s,
            r#"<line class="truth" x1="{x:.2}" y1="{TOP:.2}" x2="{x:.2}" y2="{bottom:.2}" stroke="gray" stroke-dasharray="4 3"/>"#
        );
    }
    let points: Vec<String> = curve
        .epsilons
        .iter()
        .zip(&curve.values)
        .map(|(&e, &j)| format!("{:.2},{:.2}", frame.x(e), y(j)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline class="curve" fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    );
    for m in &curve.minima {
        let _ = writeln!(
            s,
            r#"<circle class="minimum" cx="{:.2}" cy="{:.2}" r="4" fill="crimson"/>"#,
            frame.x(m.epsilon),
            y(m.j)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn lattice_svg(
    rows: &[(f64, &SolutionSet)],
    survivors: &[f64],
    truth: f64,
    range: ParameterRange,
) -> String {
    let row_height = 50.0;
    let rows_top = TOP + 20.0;
    let bottom = rows_top + row_height * rows.len() as f64;
    let height = bottom + 60.0;
    let frame = Frame {
        lo: range.lo(),
        hi: range.hi(),
    };

    let mut s = header(height, "Comparison-equation roots per wavenumber");
    for &v in survivors {
        let x = frame.x(v);
        let _ = writeln!(
            s,
            r#"<rect class="survivor" x="{:.2}" y="{:.2}" width="6" height="{:.2}" fill="gold" opacity="0.6"/>"#,
            x - 3.0,
            rows_top - 10.0,
            bottom - rows_top + 10.0
        );
    }
    if range.contains(truth) {
        let x = frame.x(truth);
        let _ = writeln!(
            s,
            r#"<line class="truth" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{bottom:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
            rows_top - 14.0
        );
    }
    for (i, (k, set)) in rows.iter().enumerate() {
        let y = rows_top + row_height * (i as f64 + 0.5);
        let _ = writeln!(s, r#"<g class="tick-row">"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">k = {}</text>"#,
            LEFT - 10.0,
            y + 4.0,
            format_short(*k)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="lightgray"/>"#,
            frame.x(frame.lo),
            frame.x(frame.hi)
        );
        for c in set.candidates.iter().filter(|c| c.is_in_range_real()) {
            let x = frame.x(c.epsilon.re);
            let colour = if c.classification == Classification::Trivial {
                "crimson"
            } else {
                "steelblue"
            };
            let _ = writeln!(
                s,
                r#"<line class="tick" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{colour}" stroke-width="2"/>"#,
                y - 12.0,
                y + 12.0
            );
        }
        s.push_str("</g>\n");
    }
    x_axis(&mut s, &frame, bottom, "eps");
    s.push_str("</svg>\n");
    s
}

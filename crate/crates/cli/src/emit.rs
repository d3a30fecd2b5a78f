//! Deterministic serialization of profiles and reports: CSV, JSON, SVG.
//!
//! All numeric output is formatted with 17 significant digits so files are
//! byte-identical across runs of the same build and round-trip exactly.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use imcf_soliton::analysis::InvariantReport;
use imcf_soliton::integrator::Profile;
use imcf_soliton::ode;

/// 17 significant digits, locale-independent.
fn num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.16e}")
    }
}

fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    fs::write(path, content).map_err(|e| {
        io::Error::new(e.kind(), format!("writing {}: {e}", path.display()))
    })
}

/// Profile CSV: `y,r,rp,rpp,w,H,residual`, one row per sample in ascending
/// `y` (including reflected negative-`y` rows), LF line endings.
pub fn emit_csv(prof: &Profile<f64>, path: &Path) -> io::Result<()> {
    let mut out = String::from("y,r,rp,rpp,w,H,residual\n");
    for s in &prof.samples {
        let state = s.state();
        let h = ode::mean_curvature(&prof.params, &state).unwrap_or(f64::NAN);
        let res = ode::soliton_residual(&prof.params, &state).unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            num(s.y),
            num(s.r),
            num(s.rp),
            num(s.rpp),
            num(s.w()),
            num(h),
            num(res)
        );
    }
    write_atomic(path, &out)
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema_version: &'static str,
    #[serde(flatten)]
    report: &'a InvariantReport<f64>,
}

/// Report JSON with stable key order and `schema_version: "1"`.
pub fn emit_json_report(report: &InvariantReport<f64>, path: &Path) -> io::Result<()> {
    let doc = ReportDoc { schema_version: "1", report };
    let mut body = serde_json::to_string_pretty(&doc)?;
    body.push('\n');
    write_atomic(path, &body)
}

const SVG_W: f64 = 960.0;
const SVG_H: f64 = 540.0;
const MARGIN: f64 = 50.0;

/// Static SVG of the `(y, r)` curve with inflection markers and the slope
/// bracket annotation. Fixed 960x540 canvas; byte-identical across runs.
pub fn emit_svg(prof: &Profile<f64>, report: &InvariantReport<f64>, path: &Path) -> io::Result<()> {
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (r_lo, mut r_hi) = (0.0f64, f64::NEG_INFINITY);
    for s in &prof.samples {
        y_lo = y_lo.min(s.y);
        y_hi = y_hi.max(s.y);
        r_hi = r_hi.max(s.r);
    }
    if r_hi <= r_lo {
        r_hi = r_lo + 1.0;
    }
    let r_hi = r_hi * 1.05;
    let sx = |y: f64| MARGIN + (y - y_lo) / (y_hi - y_lo) * (SVG_W - 2.0 * MARGIN);
    let sy = |r: f64| SVG_H - MARGIN - (r - r_lo) / (r_hi - r_lo) * (SVG_H - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}">"#
    );
    let _ = writeln!(svg, "<!-- margins: {MARGIN}px on all sides -->");
    let _ = writeln!(
        svg,
        r#"<rect width="{SVG_W}" height="{SVG_H}" fill="white"/>"#
    );
    // axes
    let _ = writeln!(
        svg,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(y_lo), sy(r_lo), sx(y_hi), sy(r_lo)
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0.0), sy(r_lo), sx(0.0), sy(r_hi)
    );

    let mut pts = String::new();
    for s in &prof.samples {
        let _ = write!(pts, "{:.3},{:.3} ", sx(s.y), sy(s.r));
    }
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        pts.trim_end()
    );

    if let Some(y1) = report.y1 {
        for ym in [y1, -y1] {
            if ym >= y_lo && ym <= y_hi {
                if let Ok((s, _)) = imcf_soliton::integrator::dense_eval(prof, ym) {
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="crimson"/>"#,
                        sx(ym), sy(s.r)
                    );
                }
            }
        }
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="13">y1 = {:.6}</text>"#,
            MARGIN + 10.0, MARGIN + 16.0, y1
        );
    }
    if let Some((lo, hi)) = report.a1_ci {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="13">a1 in [{:.6}, {:.6}]</text>"#,
            MARGIN + 10.0, MARGIN + 34.0, lo, hi
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="13">n={} lambda={} mu={}</text>"#,
        MARGIN + 10.0, MARGIN + 52.0, report.params.n, report.params.lambda, report.params.mu
    );
    let _ = writeln!(svg, "</svg>");
    write_atomic(path, &svg)
}

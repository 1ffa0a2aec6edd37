//! Minimal SVG 1.1 line charts: fixed 800×600 canvas, 2 px polylines,
//! linear axes with automatic range. Marker samples break the polyline.

use std::fmt::Write as _;
use std::path::Path;

use qthermo::qstate::frame_around;
use qthermo::thermo::ThermoLedger;
use qthermo::units::UnitSystem;
use qthermo::Vec3;

use crate::csv::column_value;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Entropic-paradigm columns are drawn dashed.
const DASHED: [&str; 6] = ["Q2", "W2", "T2", "C2", "q2_rate", "w2_rate"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    /// `None` marks a sample that should not be drawn.
    pub points: Vec<Option<(f64, f64)>>,
    pub dashed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Square ±1.05 axes with the unit circle, for Bloch-vector projections.
    pub bloch_disc: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SvgOutcome {
    pub written: bool,
    pub notes: Vec<String>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Tick positions at a 1/2/5 × 10ⁿ spacing covering [lo, hi].
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn padded_range(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

/// Render a chart. Series with fewer than two drawable points are dropped
/// with a note; `None` is returned when nothing is left to draw.
pub fn render(chart: &Chart) -> (Option<String>, Vec<String>) {
    let mut notes = Vec::new();
    let drawable: Vec<&Series> = chart
        .series
        .iter()
        .filter(|s| {
            let n = s.points.iter().flatten().filter(|(x, y)| x.is_finite() && y.is_finite()).count();
            if n < 2 {
                notes.push(format!("{}: series `{}` has {n} finite samples; omitted", chart.title, s.label));
            }
            n >= 2
        })
        .collect();
    if drawable.is_empty() {
        notes.push(format!("{}: nothing to plot; no file written", chart.title));
        return (None, notes);
    }

    let finite = || {
        drawable
            .iter()
            .flat_map(|s| s.points.iter().flatten())
            .filter(|(x, y)| x.is_finite() && y.is_finite())
    };
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in finite() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let (plot_w, plot_h);
    let (mut left, mut top) = (LEFT, TOP);
    if chart.bloch_disc {
        (x0, x1, y0, y1) = (-1.05, 1.05, -1.05, 1.05);
        let side = (WIDTH - LEFT - RIGHT).min(HEIGHT - TOP - BOTTOM);
        plot_w = side;
        plot_h = side;
        left += (WIDTH - LEFT - RIGHT - side) / 2.0;
        top += (HEIGHT - TOP - BOTTOM - side) / 2.0;
    } else {
        if x1 == x0 {
            x1 = x0 + 1.0;
        }
        (y0, y1) = padded_range(y0, y1);
        plot_w = WIDTH - LEFT - RIGHT;
        plot_h = HEIGHT - TOP - BOTTOM;
    }
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| top + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(w, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(&chart.title)
    );

    // grid and tick labels
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(w, r##"<line x1="{x:.2}" y1="{top:.2}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd" stroke-width="1"/>"##, top + plot_h);
        let _ = writeln!(w, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, top + plot_h + 18.0, tick_label(t));
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(w, r##"<line x1="{left:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd" stroke-width="1"/>"##, left + plot_w);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, left - 6.0, y + 4.0, tick_label(t));
    }
    let _ = writeln!(w, r#"<rect x="{left:.2}" y="{top:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black" stroke-width="1"/>"#);
    if y0 < 0.0 && y1 > 0.0 {
        let y = sy(0.0);
        let _ = writeln!(w, r##"<line x1="{left:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#888888" stroke-width="1"/>"##, left + plot_w);
    }
    if chart.bloch_disc {
        let r = plot_w / (x1 - x0);
        let _ = writeln!(w, r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#888888" stroke-width="1"/>"##, sx(0.0), sy(0.0), r);
        let x = sx(0.0);
        let _ = writeln!(w, r##"<line x1="{x:.2}" y1="{top:.2}" x2="{x:.2}" y2="{:.2}" stroke="#888888" stroke-width="1"/>"##, top + plot_h);
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        left + plot_w / 2.0,
        HEIGHT - 22.0,
        escape(&chart.x_label)
    );
    let _ = writeln!(
        w,
        r#"<text x="22" y="{:.2}" text-anchor="middle" transform="rotate(-90 22 {:.2})">{}</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0,
        escape(&chart.y_label)
    );

    for (k, series) in drawable.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let dash = if series.dashed { r#" stroke-dasharray="8 4""# } else { "" };
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, w: &mut String| {
            if run.len() >= 2 {
                let _ = writeln!(
                    w,
                    r#"<polyline fill="none" stroke="{colour}" stroke-width="2"{dash} points="{}"/>"#,
                    run.join(" ")
                );
            }
            run.clear();
        };
        for p in &series.points {
            match p {
                Some((x, y)) if x.is_finite() && y.is_finite() => run.push(format!("{:.2},{:.2}", sx(*x), sy(*y))),
                _ => flush(&mut run, w),
            }
        }
        flush(&mut run, w);
        if chart.bloch_disc {
            if let Some(&(x, y)) = series.points.iter().flatten().next() {
                let _ = writeln!(w, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{colour}"/>"#, sx(x), sy(y));
            }
        }
        let ly = TOP + 10.0 + 22.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(w, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"{dash}/>"#, lx + 28.0);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 34.0, ly + 4.0, escape(&series.label));
    }
    svg.push_str("</svg>\n");
    (Some(svg), notes)
}

pub fn write_chart(chart: &Chart, path: &Path) -> std::io::Result<SvgOutcome> {
    let (svg, notes) = render(chart);
    match svg {
        Some(text) => {
            std::fs::write(path, text)?;
            Ok(SvgOutcome { written: true, notes })
        }
        None => Ok(SvgOutcome { written: false, notes }),
    }
}

/// Time series of the selected ledger columns for one or more subsystems.
/// Series labels are prefixed with the subsystem label when it is non-empty.
pub fn ledger_chart(ledgers: &[(&str, &ThermoLedger)], selection: &[&str], title: &str, y_label: &str) -> (Chart, Vec<String>) {
    let mut notes = Vec::new();
    let mut series = Vec::new();
    for (prefix, ledger) in ledgers {
        for name in selection {
            let mut points = Vec::with_capacity(ledger.len());
            let mut known = true;
            for (s, c) in ledger.samples.iter().zip(&ledger.cumulative) {
                match column_value(name, s, c) {
                    Some(v) => points.push(v.finite().map(|y| (s.t, y))),
                    None => {
                        known = false;
                        break;
                    }
                }
            }
            if !known {
                notes.push(format!("{title}: unknown quantity `{name}`; skipped"));
                continue;
            }
            let label = if prefix.is_empty() { name.to_string() } else { format!("{prefix}: {name}") };
            series.push(Series {
                label,
                points,
                dashed: DASHED.contains(name),
            });
        }
    }
    let chart = Chart {
        title: title.to_string(),
        x_label: UnitSystem::TIME_LABEL.to_string(),
        y_label: y_label.to_string(),
        series,
        bloch_disc: false,
    };
    (chart, notes)
}

/// Single-ledger chart of the selected columns.
pub fn write_svg(ledger: &ThermoLedger, selection: &[&str], path: &Path) -> std::io::Result<SvgOutcome> {
    let title = path.file_stem().and_then(|s| s.to_str()).unwrap_or("ledger");
    let (chart, mut notes) = ledger_chart(&[("", ledger)], selection, title, "value");
    if selection.is_empty() {
        notes.push(format!("{title}: empty selection; no file written"));
        return Ok(SvgOutcome { written: false, notes });
    }
    let mut out = write_chart(&chart, path)?;
    notes.append(&mut out.notes);
    out.notes = notes;
    Ok(out)
}

/// Projection of the Bloch paths onto the plane spanned by the field axis
/// and the first nonzero transverse component among the initial states.
pub fn bloch_chart(ledgers: &[(&str, &ThermoLedger)], title: &str) -> Chart {
    let axis = ledgers
        .first()
        .map(|(_, l)| l.field.direction())
        .unwrap_or(Vec3::Z);
    let transverse = ledgers
        .iter()
        .find_map(|(_, l)| {
            let b = l.first().bloch;
            (b - axis.scale(b.dot(axis))).normalized()
        })
        .unwrap_or_else(|| frame_around(axis).0);
    let series = ledgers
        .iter()
        .map(|(label, l)| Series {
            label: if label.is_empty() { "B".to_string() } else { label.to_string() },
            points: l.samples.iter().map(|s| Some((s.bloch.dot(transverse), s.bloch.dot(axis)))).collect(),
            dashed: false,
        })
        .collect();
    Chart {
        title: title.to_string(),
        x_label: "transverse component of B".to_string(),
        y_label: "B · v̂".to_string(),
        series,
        bloch_disc: true,
    }
}

//! Minimal deterministic SVG output: path overlays, log-log scatter with mean
//! lines, and timing box plots.

use std::fmt::Write as _;

use super::record::RunRecord;
use super::scene::Decor;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    PathOverlay,
    LogLog,
    BoxTiming,
}

impl PlotKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "path_overlay" => Ok(Self::PathOverlay),
            "loglog" => Ok(Self::LogLog),
            "box_timing" => Ok(Self::BoxTiming),
            _ => Err(Error::config(format!("unknown plot kind `{s}`, expected path_overlay, loglog or box_timing"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::PathOverlay => "path_overlay",
            Self::LogLog => "loglog",
            Self::BoxTiming => "box_timing",
        }
    }
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const M: f64 = 60.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

/// Maps data coordinates into the plot frame.
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(mut x0: f64, mut x1: f64, mut y0: f64, mut y1: f64) -> Self {
        if x1 <= x0 {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if y1 <= y0 {
            y0 -= 0.5;
            y1 += 0.5;
        }
        Self { x0, x1, y0, y1 }
    }

    /// Same scale on both axes, centered.
    fn equal(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        let aspect = (W - 2.0 * M) / (H - 2.0 * M);
        let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let (mut w, mut h) = ((x1 - x0).max(1e-9), (y1 - y0).max(1e-9));
        if w / h > aspect {
            h = w / aspect;
        } else {
            w = h * aspect;
        }
        Self { x0: cx - 0.5 * w, x1: cx + 0.5 * w, y0: cy - 0.5 * h, y1: cy + 0.5 * h }
    }

    fn px(&self, x: f64) -> f64 {
        M + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * M)
    }

    fn py(&self, y: f64) -> f64 {
        H - M - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * M)
    }

    fn scale(&self) -> f64 {
        (W - 2.0 * M) / (self.x1 - self.x0)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title));
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String, f: &Frame, xlabel: &str, ylabel: &str, xticks: &[(f64, String)], yticks: &[(f64, String)]) {
    let _ = writeln!(
        out,
        r#"<rect x="{M}" y="{M}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        W - 2.0 * M,
        H - 2.0 * M
    );
    for (v, label) in xticks {
        let x = f.px(*v);
        let _ = writeln!(out, r#"<line x1="{x:.2}" y1="{:.1}" x2="{x:.2}" y2="{:.1}" stroke="black"/>"#, H - M, H - M + 5.0);
        let _ = writeln!(out, r#"<text x="{x:.2}" y="{:.1}" text-anchor="middle">{label}</text>"#, H - M + 18.0);
    }
    for (v, label) in yticks {
        let y = f.py(*v);
        let _ = writeln!(out, r#"<line x1="{:.1}" y1="{y:.2}" x2="{M}" y2="{y:.2}" stroke="black"/>"#, M - 5.0);
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.2}" text-anchor="end">{label}</text>"#, M - 8.0, y + 4.0);
    }
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, W / 2.0, H - 12.0, escape(xlabel));
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
}

fn legend(out: &mut String, labels: &[String]) {
    for (i, l) in labels.iter().enumerate() {
        let y = M + 14.0 + 16.0 * i as f64;
        let x = W - M - 140.0;
        let _ = writeln!(out, r#"<line x1="{x:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="{}" stroke-width="2"/>"#, x + 20.0, color(i));
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">{}</text>"#, x + 26.0, y + 4.0, escape(l));
    }
}

fn linear_ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| span / s <= 6.0).unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * step {
        let v = if t.abs() < 1e-12 * step { 0.0 } else { t };
        out.push((v, format!("{v}")));
        t += step;
    }
    out
}

fn log_ticks(lo: f64, hi: f64) -> Vec<(f64, String)> {
    (lo.ceil() as i64..=hi.floor() as i64).map(|e| (e as f64, format!("1e{e}"))).collect()
}

/// Renders `record` as the requested figure.
pub fn render(record: &RunRecord, kind: PlotKind) -> Result<String> {
    match kind {
        PlotKind::PathOverlay => path_overlay(record),
        PlotKind::LogLog => loglog(record),
        PlotKind::BoxTiming => box_timing(record),
    }
}

fn path_overlay(record: &RunRecord) -> Result<String> {
    let paths: Vec<_> = record.paths.iter().filter(|p| !p.points.is_empty()).collect();
    if paths.is_empty() {
        return Err(Error::MissingSeries(format!("{}: no paths to overlay", record.experiment)));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let mut grow = |x: f64, y: f64| {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    };
    for p in &paths {
        for q in &p.points {
            grow(q[0], q[1]);
        }
    }
    for d in &record.decor {
        match d {
            Decor::OuterCircle { center, radius } | Decor::Disk { center, radius } => {
                grow(center[0] - radius, center[1] - radius);
                grow(center[0] + radius, center[1] + radius);
            }
            Decor::Points { points } => points.iter().for_each(|p| grow(p[0], p[1])),
            Decor::Rect { lower, upper } => {
                grow(lower[0], lower[1]);
                grow(upper[0], upper[1]);
            }
        }
    }
    let f = Frame::equal(x0, x1, y0, y1);
    let mut out = String::new();
    header(&mut out, &record.experiment);
    axes(&mut out, &f, "x0", "x1", &linear_ticks(f.x0, f.x1), &linear_ticks(f.y0, f.y1));
    for d in &record.decor {
        match d {
            Decor::OuterCircle { center, radius } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#,
                    f.px(center[0]),
                    f.py(center[1]),
                    radius * f.scale()
                );
            }
            Decor::Disk { center, radius } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="silver" stroke="black"/>"#,
                    f.px(center[0]),
                    f.py(center[1]),
                    radius * f.scale()
                );
            }
            Decor::Points { points } => {
                for p in points {
                    let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.2" fill="black"/>"#, f.px(p[0]), f.py(p[1]));
                }
            }
            Decor::Rect { lower, upper } => {
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black" stroke-dasharray="4 3"/>"#,
                    f.px(lower[0]),
                    f.py(upper[1]),
                    (upper[0] - lower[0]) * f.scale(),
                    (upper[1] - lower[1]) * f.scale()
                );
            }
        }
    }
    for (i, p) in paths.iter().enumerate() {
        let pts: Vec<String> = p.points.iter().map(|q| format!("{:.2},{:.2}", f.px(q[0]), f.py(q[1]))).collect();
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#, pts.join(" "), color(i));
        let s = p.points[0];
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#, f.px(s[0]), f.py(s[1]), color(i));
    }
    let labels: Vec<String> = paths.iter().map(|p| p.label.clone()).collect();
    if labels.len() <= 12 {
        legend(&mut out, &labels);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn loglog(record: &RunRecord) -> Result<String> {
    let series: Vec<_> = record
        .series
        .iter()
        .map(|s| {
            let pts: Vec<(f64, f64)> = s.x.iter().zip(&s.y).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.log10(), y.log10())).collect();
            (s, pts)
        })
        .filter(|(_, pts)| !pts.is_empty())
        .collect();
    if series.is_empty() {
        return Err(Error::MissingSeries(format!("{}: no positive series for a log-log plot", record.experiment)));
    }
    let all = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad_x = 0.05 * (x1 - x0).max(0.2);
    let pad_y = 0.05 * (y1 - y0).max(0.2);
    let f = Frame::new(x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y);
    let mut out = String::new();
    header(&mut out, &record.experiment);
    let (xl, yl) = record.axis_labels.clone().unwrap_or_else(|| ("x".into(), "y".into()));
    axes(&mut out, &f, &xl, &yl, &log_ticks(f.x0, f.x1), &log_ticks(f.y0, f.y1));
    for (i, (_, pts)) in series.iter().enumerate() {
        for (x, y) in pts {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}" fill-opacity="0.5"/>"#, f.px(*x), f.py(*y), color(i));
        }
        // Dashed line through the mean (in log space) at each distinct x.
        let mut xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let means: Vec<String> = xs
            .iter()
            .map(|&x| {
                let ys: Vec<f64> = pts.iter().filter(|p| p.0 == x).map(|p| p.1).collect();
                let m = ys.iter().sum::<f64>() / ys.len() as f64;
                format!("{:.2},{:.2}", f.px(x), f.py(m))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
            means.join(" "),
            color(i)
        );
    }
    let labels: Vec<String> = series.iter().map(|(s, _)| s.label.clone()).collect();
    legend(&mut out, &labels);
    out.push_str("</svg>\n");
    Ok(out)
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (i, frac) = (pos.floor() as usize, pos.fract());
    if i + 1 < sorted.len() {
        sorted[i] + frac * (sorted[i + 1] - sorted[i])
    } else {
        sorted[i]
    }
}

fn box_timing(record: &RunRecord) -> Result<String> {
    let groups: Vec<_> = record.timing.groups.iter().filter(|g| !g.values.is_empty()).collect();
    if groups.is_empty() {
        return Err(Error::MissingSeries(format!("{}: no timing groups", record.experiment)));
    }
    let mut series_labels: Vec<String> = Vec::new();
    let mut cats: Vec<String> = Vec::new();
    for g in &groups {
        if !series_labels.contains(&g.series) {
            series_labels.push(g.series.clone());
        }
        if !cats.contains(&g.category) {
            cats.push(g.category.clone());
        }
    }
    let logs: Vec<Vec<f64>> = groups
        .iter()
        .map(|g| {
            let mut v: Vec<f64> = g.values.iter().map(|t| t.max(1e-9).log10()).collect();
            v.sort_by(f64::total_cmp);
            v
        })
        .collect();
    let y0 = logs.iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
    let y1 = logs.iter().map(|v| v[v.len() - 1]).fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.05 * (y1 - y0).max(0.2);
    let f = Frame::new(-0.5, cats.len() as f64 - 0.5, y0 - pad, y1 + pad);
    let mut out = String::new();
    header(&mut out, &record.experiment);
    let xticks: Vec<(f64, String)> = cats.iter().enumerate().map(|(i, c)| (i as f64, c.clone())).collect();
    let (xl, _) = record.axis_labels.clone().unwrap_or_else(|| ("group".into(), String::new()));
    axes(&mut out, &f, &xl, "wall time [s]", &xticks, &log_ticks(f.y0, f.y1));
    let ns = series_labels.len() as f64;
    let width = 0.7 / ns;
    for (g, v) in groups.iter().zip(&logs) {
        let si = series_labels.iter().position(|s| *s == g.series).unwrap_or(0);
        let ci = cats.iter().position(|c| *c == g.category).unwrap_or(0) as f64;
        let xc = ci - 0.35 + width * (si as f64 + 0.5);
        let (lo, q1, med, q3, hi) = (v[0], quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75), v[v.len() - 1]);
        let (xl, xr) = (f.px(xc - 0.4 * width), f.px(xc + 0.4 * width));
        let c = color(si);
        let _ = writeln!(out, r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="{3}"/>"#, f.px(xc), f.py(lo), f.py(hi), c);
        let _ = writeln!(
            out,
            r#"<rect x="{xl:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="white" stroke="{c}"/>"#,
            f.py(q3),
            xr - xl,
            (f.py(q1) - f.py(q3)).max(0.5)
        );
        let _ = writeln!(out, r#"<line x1="{xl:.2}" y1="{0:.2}" x2="{xr:.2}" y2="{0:.2}" stroke="{c}" stroke-width="2"/>"#, f.py(med));
    }
    legend(&mut out, &series_labels);
    out.push_str("</svg>\n");
    Ok(out)
}

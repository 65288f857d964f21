//! Self-contained SVG scatter charts of sweep results.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use stacking_core::DistributionSpec;

use crate::experiment::ExperimentRow;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// "Nice" tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(f64::EPSILON);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() * step;
    (0..)
        .map(|k| first + k as f64 * step)
        .take_while(|t| *t <= hi + step * 1e-9)
        .collect()
}

fn label(v: f64) -> String {
    if v.abs() >= 1e4 {
        format!("{}k", v / 1000.0)
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_scatter(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    // y axis starts at zero unless data is negative
    y0 = y0.min(0.0);
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    y1 += 0.05 * (y1 - y0);
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| MARGIN_TOP + plot_h - (y - y0) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        escape(title)
    );

    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="#ddd"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"##,
            MARGIN_TOP,
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 16.0,
            label(t)
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"##,
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w,
            MARGIN_LEFT - 6.0,
            y + 4.0,
            label(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(y_label)
    );

    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(svg, r#"<g fill="{color}">"#);
        for &(x, y) in &s.points {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.1}" cy="{:.1}" r="2.5"/>"#,
                sx(x),
                sy(y)
            );
        }
        let ly = MARGIN_TOP + 10.0 + 18.0 * k as f64;
        let lx = WIDTH - MARGIN_RIGHT + 14.0;
        let _ = writeln!(
            svg,
            r#"<circle cx="{lx}" cy="{ly}" r="4"/><text x="{}" y="{}" fill="black">{}</text></g>"#,
            lx + 10.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Which metric of a row to plot against `n`.
#[derive(Debug, Clone, Copy)]
pub enum Metric {
    ChainsPerSqrtN,
    ScaledError,
    RatioBound,
}

impl Metric {
    pub const ALL: [Metric; 3] = [
        Metric::ChainsPerSqrtN,
        Metric::ScaledError,
        Metric::RatioBound,
    ];

    fn key(self) -> &'static str {
        match self {
            Metric::ChainsPerSqrtN => "chains",
            Metric::ScaledError => "error",
            Metric::RatioBound => "ratio",
        }
    }

    fn axis(self) -> &'static str {
        match self {
            Metric::ChainsPerSqrtN => "c / sqrt(n)",
            Metric::ScaledError => "(chi'_h / (omega'/h) - 1) sqrt(n)",
            Metric::RatioBound => "chi'_h / (omega'/h)",
        }
    }

    fn value(self, row: &ExperimentRow) -> Option<f64> {
        match self {
            Metric::ChainsPerSqrtN => row.c_over_sqrt_n,
            Metric::ScaledError => row.err_sqrt_n,
            Metric::RatioBound => row.ratio_ub,
        }
    }
}

fn family(dist: &str) -> &'static str {
    match dist.parse::<DistributionSpec>() {
        Ok(spec) if spec.is_gaussian() => "gaussian",
        _ => "uniform",
    }
}

/// Writes three charts per distribution family next to `csv_path`:
/// `<stem>_<family>_{chains,error,ratio}.svg`.
pub fn write_plots(csv_path: &Path, rows: &[ExperimentRow]) -> io::Result<Vec<PathBuf>> {
    let dir = csv_path.parent().unwrap_or(Path::new("."));
    let stem = csv_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".into());

    let mut written = Vec::new();
    for fam in ["uniform", "gaussian"] {
        let mut dists: Vec<&str> = Vec::new();
        for r in rows.iter().filter(|r| family(&r.dist) == fam) {
            if !dists.contains(&r.dist.as_str()) {
                dists.push(&r.dist);
            }
        }
        if dists.is_empty() {
            continue;
        }
        for metric in Metric::ALL {
            let series: Vec<Series> = dists
                .iter()
                .map(|d| Series {
                    label: d.to_string(),
                    points: rows
                        .iter()
                        .filter(|r| r.dist == *d)
                        .filter_map(|r| metric.value(r).map(|v| (r.n as f64, v)))
                        .collect(),
                })
                .collect();
            let title = format!("{} vs n ({fam} distributions)", metric.axis());
            let svg = render_scatter(&title, "n", metric.axis(), &series);
            let path = dir.join(format!("{stem}_{fam}_{}.svg", metric.key()));
            std::fs::write(&path, svg)?;
            written.push(path);
        }
    }
    Ok(written)
}

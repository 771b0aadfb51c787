use std::fmt::Write as _;
use std::path::Path;

use super::table::{write_atomic, Table};
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn bounds(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if lo > hi {
        return None;
    }
    if lo == hi {
        return Some((lo - 0.5, hi + 0.5));
    }
    Some((lo, hi))
}

/// Standalone SVG: the first column is the abscissa, every further column is
/// one polyline. Dashed lines alternate with solid ones.
pub fn render_svg(table: &Table) -> Result<String> {
    if table.columns().len() < 2 || table.rows() == 0 {
        return Err(Error::InvalidParams(
            "plot needs an abscissa column and at least one non-empty series".into(),
        ));
    }
    let x = table.columns()[0].as_f64();
    let series: Vec<Vec<f64>> = table.columns()[1..].iter().map(|c| c.as_f64()).collect();
    let (x0, x1) = bounds(x.iter().copied())
        .ok_or_else(|| Error::InvalidParams("abscissa has no finite values".into()))?;
    let (y0, y1) = bounds(series.iter().flatten().copied())
        .ok_or_else(|| Error::InvalidParams("series have no finite values".into()))?;
    let sx = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="100%" height="100%" fill="white"/>"#
    );
    // axes with end ticks
    let (l, r, b, t) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1" fill="none"><line x1="{l}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{l}" y1="{b}" x2="{l}" y2="{t}"/></g>"#
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12" fill="black">"#
    );
    for (v, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{v:.4}</text>"#,
            sx(v),
            b + 18.0
        );
    }
    for v in [y0, y1] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.4}</text>"#,
            l - 6.0,
            sy(v) + 4.0
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{l}" y1="{0:.2}" x2="{r}" y2="{0:.2}" stroke="#999" stroke-width="0.5"/>"##,
            sy(0.0)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        0.5 * (l + r),
        HEIGHT - 15.0,
        escape(&table.names()[0])
    );
    let _ = writeln!(s, "</g>");

    for (k, ys) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let dash = if k % 2 == 1 {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let points: Vec<String> = x
            .iter()
            .zip(ys)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(&a, &b)| format!("{:.2},{:.2}", sx(a), sy(b)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
            points.join(" ")
        );
        let ly = t + 16.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{ly:.2}" x2="{1:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"{dash}/><text x="{2:.2}" y="{3:.2}" font-family="sans-serif" font-size="12">{4}</text>"#,
            r - 150.0,
            r - 120.0,
            r - 114.0,
            ly + 4.0,
            escape(&table.names()[k + 1])
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn plot_svg(table: &Table, path: &Path) -> Result<()> {
    let svg = render_svg(table)?;
    write_atomic(path, svg.as_bytes())
}

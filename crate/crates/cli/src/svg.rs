//! Minimal static SVG plots: filled bands and polyline curves over one
//! shared axis frame.

use std::io::Write;
use std::path::Path;

use apf_core::apf::CurveSample;

use crate::error::CliError;

pub struct Band<'a> {
    pub lower: &'a CurveSample,
    pub upper: &'a CurveSample,
    pub fill: &'a str,
}

pub struct Series<'a> {
    pub curve: &'a CurveSample,
    pub stroke: &'a str,
    pub width: f64,
    pub dashed: bool,
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const ML: f64 = 56.0;
const MR: f64 = 16.0;
const MT: f64 = 34.0;
const MB: f64 = 42.0;

pub fn plot(
    path: &Path,
    title: &str,
    config: &str,
    bands: &[Band],
    series: &[Series],
) -> Result<(), CliError> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for b in bands {
        xs.push(b.lower.t1);
        xs.push(b.lower.t2);
        ys.extend(b.lower.values.iter().chain(&b.upper.values).copied());
    }
    for s in series {
        xs.push(s.curve.t1);
        xs.push(s.curve.t2);
        ys.extend(s.curve.values.iter().copied());
    }
    let (x0, x1) = bounds(&xs);
    let (mut y0, mut y1) = bounds(&ys);
    if y0 == y1 {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let px = |x: f64| ML + (x - x0) / (x1 - x0) * (W - ML - MR);
    let py = |y: f64| H - MB - (y - y0) / (y1 - y0) * (H - MT - MB);

    let poly = |c: &CurveSample| -> String {
        (0..c.n_grid())
            .map(|g| format!("{:.2},{:.2}", px(c.grid_coord(g)), py(c.values[g])))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(
        f,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    )?;
    writeln!(f, "<!-- {} -->", config.replace("--", "- -"))?;
    writeln!(f, r#"<rect width="{W}" height="{H}" fill="white"/>"#)?;
    writeln!(
        f,
        r#"<text x="{:.2}" y="20" font-family="sans-serif" font-size="14">{}</text>"#,
        ML, title
    )?;
    for b in bands {
        let forward = poly(b.upper);
        let back: String = (0..b.lower.n_grid())
            .rev()
            .map(|g| format!("{:.2},{:.2}", px(b.lower.grid_coord(g)), py(b.lower.values[g])))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(
            f,
            r#"<polygon points="{forward} {back}" fill="{}" stroke="none"/>"#,
            b.fill
        )?;
    }
    for s in series {
        let dash = if s.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        writeln!(
            f,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{}"{} />"#,
            poly(s.curve),
            s.stroke,
            s.width,
            dash
        )?;
    }
    // Axis frame and extreme tick labels.
    writeln!(
        f,
        r#"<rect x="{ML}" y="{MT}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        W - ML - MR,
        H - MT - MB
    )?;
    let label = |v: f64| {
        if v == 0.0 {
            "0".to_string()
        } else {
            format!("{v:.4}")
        }
    };
    writeln!(
        f,
        r#"<text x="{ML}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
        H - MB + 16.0,
        label(x0)
    )?;
    writeln!(
        f,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
        W - MR,
        H - MB + 16.0,
        label(x1)
    )?;
    writeln!(
        f,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
        ML - 6.0,
        H - MB,
        label(y0)
    )?;
    writeln!(
        f,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
        ML - 6.0,
        MT + 10.0,
        label(y1)
    )?;
    writeln!(f, "</svg>")?;
    Ok(())
}

fn bounds(vals: &[f64]) -> (f64, f64) {
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

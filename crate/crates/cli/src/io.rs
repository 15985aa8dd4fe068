//! File formats: point CSVs, height-graph text files, curve CSVs, and
//! diagram JSON. Comment lines start with '#'; the first such line of every
//! artifact this tool writes carries the producing configuration. Floats are
//! written in Rust's shortest round-trip decimal form, so re-reading an
//! artifact reproduces the in-memory values exactly.

use std::io::Write;
use std::path::Path;

use apf_core::apf::CurveSample;
use apf_core::geometry::Point2;
use apf_core::persistence::{GraphVertex, HeightGraph, PersistenceDiagram};

use crate::error::CliError;

fn parse_error(path: &Path, line: usize, what: &str) -> CliError {
    CliError::Data(format!("{}:{}: {}", path.display(), line, what))
}

/// Reads a CSV of "x,y" rows. Comment lines and one leading non-numeric
/// header line are skipped; line numbers count physical lines.
pub fn parse_points(path: &Path) -> Result<Vec<Point2>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    let mut saw_data = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(parse_error(path, lineno, "expected two comma-separated fields"));
        }
        match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => {
                out.push(Point2::new(x, y));
                saw_data = true;
            }
            _ if !saw_data => {} // header line
            _ => return Err(parse_error(path, lineno, "expected two numbers")),
        }
    }
    Ok(out)
}

pub fn write_points(path: &Path, config: &str, points: &[Point2]) -> Result<(), CliError> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "# {config}")?;
    writeln!(f, "x,y")?;
    for p in points {
        writeln!(f, "{},{}", p.x, p.y)?;
    }
    Ok(())
}

/// Reads a height graph: "v id x y z" vertex lines (the height is z) and
/// "e id1 id2" edge lines.
pub fn parse_heightgraph(path: &Path) -> Result<HeightGraph, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "v" => {
                if fields.len() != 5 {
                    return Err(parse_error(path, lineno, "vertex line needs: v id x y z"));
                }
                let id = fields[1]
                    .parse::<i64>()
                    .map_err(|_| parse_error(path, lineno, "bad vertex id"))?;
                let coords: Result<Vec<f64>, _> =
                    fields[2..5].iter().map(|s| s.parse::<f64>()).collect();
                let coords =
                    coords.map_err(|_| parse_error(path, lineno, "bad vertex coordinate"))?;
                vertices.push(GraphVertex {
                    id,
                    height: coords[2],
                    pos: Some([coords[0], coords[1], coords[2]]),
                });
            }
            "e" => {
                if fields.len() != 3 {
                    return Err(parse_error(path, lineno, "edge line needs: e id1 id2"));
                }
                let a = fields[1]
                    .parse::<i64>()
                    .map_err(|_| parse_error(path, lineno, "bad edge endpoint"))?;
                let b = fields[2]
                    .parse::<i64>()
                    .map_err(|_| parse_error(path, lineno, "bad edge endpoint"))?;
                edges.push((a, b));
            }
            _ => return Err(parse_error(path, lineno, "expected a 'v' or 'e' line")),
        }
    }
    Ok(HeightGraph::new(vertices, edges)?)
}

pub fn write_diagram(
    path: &Path,
    config: &serde_json::Value,
    dgm: &PersistenceDiagram,
) -> Result<(), CliError> {
    let doc = serde_json::json!({
        "config": config,
        "dim": dgm.dim,
        "points": dgm.points,
    });
    std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
    Ok(())
}

pub fn parse_diagram(path: &Path) -> Result<PersistenceDiagram, CliError> {
    let text = std::fs::read_to_string(path)?;
    let dgm: PersistenceDiagram = serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("{}: {}", path.display(), e)))?;
    for p in &dgm.points {
        if !(p.birth.is_finite() && p.death.is_finite() && p.birth <= p.death) {
            return Err(CliError::Data(format!(
                "{}: invalid diagram point ({}, {})",
                path.display(),
                p.birth,
                p.death
            )));
        }
    }
    Ok(dgm)
}

/// Writes aligned curves as CSV: a grid column "m" followed by one named
/// value column per curve.
pub fn write_curves(
    path: &Path,
    config: &str,
    names: &[&str],
    curves: &[&CurveSample],
) -> Result<(), CliError> {
    assert_eq!(names.len(), curves.len());
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "# {config}")?;
    writeln!(f, "m,{}", names.join(","))?;
    let n = curves[0].n_grid();
    for g in 0..n {
        write!(f, "{}", curves[0].grid_coord(g))?;
        for c in curves {
            write!(f, ",{}", c.values[g])?;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// Reads the first value column of a curve CSV back into a `CurveSample`,
/// checking that the grid column is equidistant.
pub fn parse_curve(path: &Path) -> Result<CurveSample, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut grid = Vec::new();
    let mut values = Vec::new();
    let mut saw_data = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 2 {
            return Err(parse_error(path, lineno, "expected at least two fields"));
        }
        match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
            (Ok(m), Ok(v)) => {
                grid.push(m);
                values.push(v);
                saw_data = true;
            }
            _ if !saw_data => {}
            _ => return Err(parse_error(path, lineno, "expected numeric fields")),
        }
    }
    if grid.len() < 2 {
        return Err(CliError::Data(format!(
            "{}: a curve needs at least two grid rows",
            path.display()
        )));
    }
    let t1 = grid[0];
    let t2 = *grid.last().unwrap();
    let h = (t2 - t1) / (grid.len() - 1) as f64;
    let tol = 1e-9 * (t2 - t1).abs().max(1.0);
    for (i, &m) in grid.iter().enumerate() {
        if (m - (t1 + h * i as f64)).abs() > tol {
            return Err(CliError::Data(format!(
                "{}: grid column is not equidistant near row {}",
                path.display(),
                i + 1
            )));
        }
    }
    if t1 >= t2 {
        return Err(CliError::Data(format!("{}: grid must increase", path.display())));
    }
    Ok(CurveSample { t1, t2, values })
}

/// Loads a set of curve files asserting one shared grid.
pub fn parse_curve_set(paths: &[std::path::PathBuf]) -> Result<Vec<CurveSample>, CliError> {
    let curves: Vec<CurveSample> =
        paths.iter().map(|p| parse_curve(p)).collect::<Result<_, _>>()?;
    CurveSample::common_grid(&curves)?;
    Ok(curves)
}

pub fn write_json(path: &Path, doc: &serde_json::Value) -> Result<(), CliError> {
    std::fs::write(path, format!("{}\n", serde_json::to_string_pretty(doc).unwrap()))?;
    Ok(())
}

//! End-to-end composition of the geometry, persistence, and APF stages.

use crate::apf::{apf_from_rrpd, discretize, to_rrpd, CurveSample, Truncation};
use crate::geometry::{alpha_filtration, delaunay, GeometryError, Point2};
use crate::persistence::{ph_pointcloud, PersistenceDiagram, TieBreak};

/// Alpha-complex persistence diagram of a planar point cloud.
pub fn alpha_diagram(points: &[Point2], k: usize) -> Result<PersistenceDiagram, GeometryError> {
    let tri = delaunay(points)?;
    let filtration = alpha_filtration(&tri);
    Ok(ph_pointcloud(&filtration, k, TieBreak::Deterministic))
}

/// Discretized APF of a point cloud: triangulate, compute the dimension-k
/// diagram, transform, and evaluate on the grid.
pub fn apf_curve(
    points: &[Point2],
    k: usize,
    truncation: Truncation,
    t1: f64,
    t2: f64,
    n_grid: usize,
) -> Result<CurveSample, GeometryError> {
    let dgm = alpha_diagram(points, k)?;
    Ok(discretize(&apf_from_rrpd(&to_rrpd(&dgm), truncation), t1, t2, n_grid))
}

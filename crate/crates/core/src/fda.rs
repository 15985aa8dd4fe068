//! Functional-data machinery on curve samples: modified band depth, the
//! functional boxplot with the 1.5 outlier criterion, trimmed means, K-means
//! clustering, and nearest-trimmed-mean classification.

use thiserror::Error;

use crate::apf::{curve_distance, CurveSample, Norm};
use crate::seeds;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FdaError {
    #[error("curves are not on the same grid")]
    GridMismatch,
    #[error("need at least {0} curves")]
    TooFewCurves(usize),
    #[error("cluster count {k} must be between 1 and {max}")]
    BadK { k: usize, max: usize },
    #[error("classification needs at least one nonempty group")]
    EmptyGroup,
}

/// Modified band depth of every curve with respect to the whole sample: the
/// average fraction of the window each curve spends between the pointwise
/// extremes of every pair, with the window measure approximated by
/// grid-point counting.
pub fn mbd(curves: &[CurveSample]) -> Result<Vec<f64>, FdaError> {
    CurveSample::common_grid(curves).map_err(|_| FdaError::GridMismatch)?;
    let r = curves.len();
    if r < 2 {
        return Err(FdaError::TooFewCurves(2));
    }
    let n_grid = curves[0].n_grid();
    let window = curves[0].t2 - curves[0].t1;
    let pairs = (r * (r - 1) / 2) as f64;
    let mut in_band = vec![0usize; r];
    let mut column = vec![0.0; r];
    for g in 0..n_grid {
        for (i, c) in curves.iter().enumerate() {
            column[i] = c.values[g];
        }
        column.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, c) in curves.iter().enumerate() {
            let v = c.values[g];
            // A pair brackets v unless both members are strictly below or
            // strictly above it.
            let below = column.partition_point(|&x| x < v);
            let above = r - column.partition_point(|&x| x <= v);
            let missing = below * below.saturating_sub(1) / 2 + above * above.saturating_sub(1) / 2;
            in_band[i] += r * (r - 1) / 2 - missing;
        }
    }
    Ok(in_band
        .iter()
        .map(|&count| count as f64 / pairs * window / n_grid as f64)
        .collect())
}

/// Functional boxplot built on MBD depths.
#[derive(Debug, Clone)]
pub struct BoxplotResult {
    pub depths: Vec<f64>,
    /// Deepest curve (ties broken towards the smaller index).
    pub central_index: usize,
    /// Pointwise envelope of the 50% deepest curves.
    pub central_lower: CurveSample,
    pub central_upper: CurveSample,
    /// Central envelope inflated by `inflation` times its pointwise range.
    pub fence_lower: CurveSample,
    pub fence_upper: CurveSample,
    /// Curves exceeding a fence at some grid point.
    pub outlier_indices: Vec<usize>,
}

/// Ranks curves by depth, forms the central envelope of the ceil(r/2)
/// deepest, inflates it by `inflation` times its range, and flags every curve
/// that leaves the fences anywhere.
pub fn functional_boxplot(
    curves: &[CurveSample],
    inflation: f64,
) -> Result<BoxplotResult, FdaError> {
    if curves.len() < 4 {
        return Err(FdaError::TooFewCurves(4));
    }
    let depths = mbd(curves)?;
    let order = depth_order(&depths);
    let central = &order[..curves.len().div_ceil(2)];

    let n_grid = curves[0].n_grid();
    let mut central_lower = curves[central[0]].clone();
    let mut central_upper = curves[central[0]].clone();
    for &i in &central[1..] {
        for g in 0..n_grid {
            central_lower.values[g] = central_lower.values[g].min(curves[i].values[g]);
            central_upper.values[g] = central_upper.values[g].max(curves[i].values[g]);
        }
    }
    let mut fence_lower = central_lower.clone();
    let mut fence_upper = central_upper.clone();
    for g in 0..n_grid {
        let spread = inflation * (central_upper.values[g] - central_lower.values[g]);
        if spread.is_finite() {
            fence_lower.values[g] -= spread;
            fence_upper.values[g] += spread;
        } else {
            fence_lower.values[g] = f64::NEG_INFINITY;
            fence_upper.values[g] = f64::INFINITY;
        }
    }
    let outlier_indices = (0..curves.len())
        .filter(|&i| {
            curves[i]
                .values
                .iter()
                .zip(fence_lower.values.iter().zip(&fence_upper.values))
                .any(|(&v, (&lo, &hi))| v < lo || v > hi)
        })
        .collect();
    Ok(BoxplotResult {
        central_index: order[0],
        depths,
        central_lower,
        central_upper,
        fence_lower,
        fence_upper,
        outlier_indices,
    })
}

/// Indices sorted by depth descending, ties towards the smaller index.
fn depth_order(depths: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..depths.len()).collect();
    order.sort_by(|&a, &b| depths[b].partial_cmp(&depths[a]).unwrap().then(a.cmp(&b)));
    order
}

/// Pointwise mean of the ceil((1-alpha) r) deepest curves.
pub fn trimmed_mean(curves: &[CurveSample], alpha: f64) -> Result<CurveSample, FdaError> {
    assert!((0.0..1.0).contains(&alpha), "trim fraction must be in [0, 1)");
    match curves.len() {
        0 => return Err(FdaError::TooFewCurves(1)),
        1 => return Ok(curves[0].clone()),
        _ => {}
    }
    let depths = mbd(curves)?;
    let order = depth_order(&depths);
    // The small slack keeps exact fractions like (1 - 1/3) * 3 = 2 from
    // rounding up through floating-point noise.
    let keep = (((1.0 - alpha) * curves.len() as f64 - 1e-9).ceil() as usize)
        .clamp(1, curves.len());
    let kept: Vec<CurveSample> = order[..keep].iter().map(|&i| curves[i].clone()).collect();
    CurveSample::mean(&kept).map_err(|_| FdaError::GridMismatch)
}

/// Number of independently seeded Lloyd runs behind [`kmeans_curves`]; the
/// assignment with the smallest within-cluster sum of squares wins.
const KMEANS_RESTARTS: u64 = 10;

/// Lloyd iterations with the L2 curve distance. Initial centres are drawn
/// uniformly without replacement; an empty cluster is reseeded with the curve
/// farthest from its assigned centre. Each run stops at an assignment
/// fixpoint or after `max_iter` sweeps.
///
/// A single uniform initialization routinely lands in the local optimum that
/// merges the two closest groups and splits another, so the returned labels
/// come from the best of ten restarts seeded from `seed`.
pub fn kmeans_curves(
    curves: &[CurveSample],
    k: usize,
    seed: u64,
    max_iter: usize,
) -> Result<Vec<usize>, FdaError> {
    let mut best: Option<(f64, Vec<usize>)> = None;
    for run in 0..KMEANS_RESTARTS {
        let (labels, trace) =
            kmeans_with_trace(curves, k, seeds::derived(seed, run), max_iter)?;
        let objective = trace.last().copied().unwrap_or(f64::INFINITY);
        if best.as_ref().is_none_or(|(b, _)| objective < *b) {
            best = Some((objective, labels));
        }
    }
    Ok(best.expect("at least one run").1)
}

fn kmeans_with_trace(
    curves: &[CurveSample],
    k: usize,
    seed: u64,
    max_iter: usize,
) -> Result<(Vec<usize>, Vec<f64>), FdaError> {
    CurveSample::common_grid(curves).map_err(|_| FdaError::GridMismatch)?;
    let r = curves.len();
    if k == 0 || k >= r {
        return Err(FdaError::BadK { k, max: r.saturating_sub(1) });
    }
    let mut rng = seeds::rng(seed);
    let mut centres: Vec<CurveSample> = rand::seq::index::sample(&mut rng, r, k)
        .iter()
        .map(|i| curves[i].clone())
        .collect();

    let dist = |c: &CurveSample, centre: &CurveSample| -> f64 {
        curve_distance(c, centre, Norm::L2).expect("grids verified")
    };
    let mut labels = vec![0usize; r];
    let mut trace = Vec::new();
    for _ in 0..max_iter {
        let mut new_labels = Vec::with_capacity(r);
        for c in curves {
            let mut best = (0usize, f64::INFINITY);
            for (ci, centre) in centres.iter().enumerate() {
                let d = dist(c, centre);
                if d < best.1 {
                    best = (ci, d);
                }
            }
            new_labels.push(best.0);
        }
        // Reseed empty clusters with the globally worst-fitting curve.
        loop {
            let mut counts = vec![0usize; k];
            for &l in &new_labels {
                counts[l] += 1;
            }
            let Some(empty) = counts.iter().position(|&c| c == 0) else { break };
            let farthest = (0..r)
                .max_by(|&a, &b| {
                    dist(&curves[a], &centres[new_labels[a]])
                        .partial_cmp(&dist(&curves[b], &centres[new_labels[b]]))
                        .unwrap()
                        .then(b.cmp(&a))
                })
                .unwrap();
            centres[empty] = curves[farthest].clone();
            new_labels[farthest] = empty;
        }
        trace.push(
            (0..r).map(|i| dist(&curves[i], &centres[new_labels[i]]).powi(2)).sum::<f64>(),
        );
        let done = new_labels == labels;
        labels = new_labels;
        if done {
            break;
        }
        for (ci, centre) in centres.iter_mut().enumerate() {
            let members: Vec<CurveSample> = (0..r)
                .filter(|&i| labels[i] == ci)
                .map(|i| curves[i].clone())
                .collect();
            *centre = CurveSample::mean(&members).expect("cluster cannot be empty here");
        }
    }
    Ok((labels, trace))
}

/// Assigns a curve to the group with the nearest trimmed mean in L2; ties go
/// to the smaller group index.
pub fn classify(
    curve: &CurveSample,
    groups: &[Vec<CurveSample>],
    alpha: f64,
) -> Result<usize, FdaError> {
    if groups.is_empty() || groups.iter().any(|g| g.is_empty()) {
        return Err(FdaError::EmptyGroup);
    }
    let mut best = (0usize, f64::INFINITY);
    for (gi, group) in groups.iter().enumerate() {
        let centre = trimmed_mean(group, alpha)?;
        let d = curve_distance(curve, &centre, Norm::L2)
            .map_err(|_| FdaError::GridMismatch)?;
        if d < best.1 {
            best = (gi, d);
        }
    }
    Ok(best.0)
}

//! Empirical-bootstrap procedures: a sup-norm confidence band for the mean
//! curve, two-sample Kolmogorov-Smirnov and L1 bootstrap tests, the transform
//! of a diagram confidence radius into an APF band, and a resampling estimate
//! of that radius.
//!
//! Bootstrap iterations draw from streams derived per (seed, iteration), so
//! the replicate sequence is identical under any degree of parallelism.

use rayon::prelude::*;
use thiserror::Error;

use crate::apf::{to_rrpd, trapezoid, Apf, CurveSample};
use crate::geometry::{GeometryError, Point2};
use crate::persistence::{bottleneck, PersistenceDiagram};
use crate::pipeline::alpha_diagram;
use crate::seeds;
use rand::Rng;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BootstrapError {
    #[error("curves are not on the same grid")]
    GridMismatch,
    #[error("interval lies outside the curve window")]
    WindowOutOfRange,
    #[error("need at least {0} curves per sample")]
    TooFewCurves(usize),
}

/// The estimated upper quantile q of a bootstrap sample: the smallest q >= 0
/// whose exceedance fraction is at most alpha.
pub fn quantile_hat(thetas: &[f64], alpha: f64) -> f64 {
    assert!(!thetas.is_empty(), "need at least one bootstrap replicate");
    assert!(alpha > 0.0 && alpha < 1.0);
    let mut sorted = thetas.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let b = sorted.len() as f64;
    let exceed = |q: f64| (sorted.len() - sorted.partition_point(|&t| t <= q)) as f64 / b;
    if exceed(0.0) <= alpha {
        return 0.0;
    }
    for &q in &sorted {
        if q >= 0.0 && exceed(q) <= alpha {
            return q;
        }
    }
    unreachable!("the largest replicate has exceedance zero");
}

/// Constant-width confidence band for the mean curve.
#[derive(Debug, Clone)]
pub struct BandResult {
    pub mean: CurveSample,
    /// q_hat / sqrt(r).
    pub half_width: f64,
    pub lower: CurveSample,
    pub upper: CurveSample,
}

/// Empirical-bootstrap band: B resamples of the sample mean, sup-norm
/// replicates theta = sqrt(r) sup |mean - resampled mean|, band at
/// mean +- q_hat(alpha) / sqrt(r).
pub fn mean_band(
    curves: &[CurveSample],
    alpha: f64,
    b: usize,
    seed: u64,
) -> Result<BandResult, BootstrapError> {
    CurveSample::common_grid(curves).map_err(|_| BootstrapError::GridMismatch)?;
    if curves.len() < 2 {
        return Err(BootstrapError::TooFewCurves(2));
    }
    assert!(b >= 1, "need at least one bootstrap iteration");
    let r = curves.len();
    let sqrt_r = (r as f64).sqrt();
    let mean = CurveSample::mean(curves).expect("grids verified");
    let thetas: Vec<f64> = (0..b)
        .into_par_iter()
        .map(|bi| {
            let mut rng = seeds::derived_rng(seed, bi as u64);
            let mut acc = vec![0.0; mean.n_grid()];
            for _ in 0..r {
                let pick = &curves[rng.random_range(0..r)];
                for (a, v) in acc.iter_mut().zip(&pick.values) {
                    *a += v;
                }
            }
            acc.iter()
                .zip(&mean.values)
                .map(|(a, m)| (a / r as f64 - m).abs())
                .fold(0.0f64, f64::max)
                * sqrt_r
        })
        .collect();
    let half_width = quantile_hat(&thetas, alpha) / sqrt_r;
    let lower = CurveSample {
        t1: mean.t1,
        t2: mean.t2,
        values: mean.values.iter().map(|v| v - half_width).collect(),
    };
    let upper = CurveSample {
        t1: mean.t1,
        t2: mean.t2,
        values: mean.values.iter().map(|v| v + half_width).collect(),
    };
    Ok(BandResult { mean, half_width, lower, upper })
}

/// Two-sample statistic choice. `Ks` is the scaled sup difference of the
/// group means. `L1` is the plain integral of the absolute mean difference;
/// its bootstrap replicates nevertheless carry the same sqrt(r1 r2 / r)
/// factor as the KS replicates, which makes the L1 test markedly more
/// conservative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSampleStat {
    Ks,
    L1,
}

#[derive(Debug, Clone)]
pub struct TwoSampleResult {
    pub statistic: f64,
    pub q_hat: f64,
    /// Fraction of bootstrap replicates exceeding the observed statistic.
    pub p_hat: f64,
    pub reject: bool,
}

/// Bootstrap two-sample test of equal curve distributions on the window
/// restriction `interval`: the pooled sample is resampled with replacement,
/// the first r1 draws standing in for the first group.
pub fn two_sample(
    group_a: &[CurveSample],
    group_b: &[CurveSample],
    stat: TwoSampleStat,
    alpha: f64,
    b: usize,
    seed: u64,
    interval: (f64, f64),
) -> Result<TwoSampleResult, BootstrapError> {
    if group_a.len() < 2 || group_b.len() < 2 {
        return Err(BootstrapError::TooFewCurves(2));
    }
    let mut pooled: Vec<&CurveSample> = group_a.iter().collect();
    pooled.extend(group_b.iter());
    {
        let all: Vec<CurveSample> = pooled.iter().map(|c| (*c).clone()).collect();
        CurveSample::common_grid(&all).map_err(|_| BootstrapError::GridMismatch)?;
    }
    assert!(b >= 1);
    let grid = grid_range(group_a.first().unwrap(), interval)?;
    let (r1, r2) = (group_a.len(), group_b.len());
    let r = r1 + r2;
    let factor = ((r1 * r2) as f64 / r as f64).sqrt();
    let h = group_a[0].spacing();

    let diff_stat = |mean_a: &[f64], mean_b: &[f64], scaled: bool| -> f64 {
        let diffs = grid.clone().map(|g| (mean_a[g] - mean_b[g]).abs());
        let raw = match stat {
            TwoSampleStat::Ks => diffs.fold(0.0f64, f64::max),
            TwoSampleStat::L1 => trapezoid(diffs, h),
        };
        let scale = match stat {
            TwoSampleStat::Ks => factor,
            TwoSampleStat::L1 if scaled => factor,
            TwoSampleStat::L1 => 1.0,
        };
        raw * scale
    };

    let mean_of = |curves: &[&CurveSample]| -> Vec<f64> {
        let n = curves[0].n_grid();
        let mut acc = vec![0.0; n];
        for c in curves {
            for (a, v) in acc.iter_mut().zip(&c.values) {
                *a += v;
            }
        }
        acc.iter_mut().for_each(|a| *a /= curves.len() as f64);
        acc
    };

    let mean_a = mean_of(&pooled[..r1]);
    let mean_b = mean_of(&pooled[r1..]);
    let statistic = diff_stat(&mean_a, &mean_b, false);

    let thetas: Vec<f64> = (0..b)
        .into_par_iter()
        .map(|bi| {
            let mut rng = seeds::derived_rng(seed, bi as u64);
            let draws: Vec<&CurveSample> =
                (0..r).map(|_| pooled[rng.random_range(0..r)]).collect();
            let m_a = mean_of(&draws[..r1]);
            let m_b = mean_of(&draws[r1..]);
            diff_stat(&m_a, &m_b, true)
        })
        .collect();
    let q_hat = quantile_hat(&thetas, alpha);
    let p_hat = thetas.iter().filter(|&&t| t > statistic).count() as f64 / b as f64;
    Ok(TwoSampleResult { statistic, q_hat, p_hat, reject: statistic > q_hat })
}

/// Grid indices whose coordinates fall inside the interval.
fn grid_range(
    curve: &CurveSample,
    interval: (f64, f64),
) -> Result<std::ops::Range<usize>, BootstrapError> {
    let (lo, hi) = interval;
    let tol = 1e-9 * (curve.t2 - curve.t1).abs();
    if lo > hi || lo < curve.t1 - tol || hi > curve.t2 + tol {
        return Err(BootstrapError::WindowOutOfRange);
    }
    let n = curve.n_grid();
    let first = (0..n).find(|&g| curve.grid_coord(g) >= lo - tol);
    let last = (0..n).rev().find(|&g| curve.grid_coord(g) <= hi + tol);
    match (first, last) {
        (Some(a), Some(b)) if a + 1 < b + 1 => Ok(a..b + 1),
        _ => Err(BootstrapError::WindowOutOfRange),
    }
}

/// Transforms a bottleneck-radius bound `c` around a diagram into lower and
/// upper APFs. A point with lifetime > 2c may move anywhere in the square of
/// half-side c around it (with births clamped at zero), which bounds its
/// contribution between a jump of max(l - 2c, 0) at m + c and a jump of
/// d + c - max(b - c, 0) at m - c. Points with lifetime <= 2c are treated as
/// noise and contribute to neither bound.
pub fn pd_confidence_band(dgm: &PersistenceDiagram, c: f64) -> (Apf, Apf) {
    assert!(c >= 0.0);
    let rrpd = to_rrpd(dgm);
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for p in &rrpd.points {
        if p.lifetime <= 2.0 * c {
            continue;
        }
        let birth = p.meanage - p.lifetime / 2.0;
        let death = p.meanage + p.lifetime / 2.0;
        lower.push((p.meanage + c, (p.lifetime - 2.0 * c) * p.mult as f64));
        let max_life = death + c - (birth - c).max(0.0);
        upper.push((p.meanage - c, max_life * p.mult as f64));
    }
    (Apf::from_jumps(lower), Apf::from_jumps(upper))
}

/// Plain resampling estimate of a bottleneck confidence radius: B bootstrap
/// resamples of the point cloud (duplicate draws jittered by 1e-9 times the
/// cloud diameter), each compared to the original diagram, then the alpha
/// exceedance quantile.
pub fn bottleneck_radius(
    points: &[Point2],
    k: usize,
    b: usize,
    alpha: f64,
    seed: u64,
) -> Result<f64, GeometryError> {
    assert!(b >= 1);
    let base = alpha_diagram(points, k)?;
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    let diameter = ((max_x - min_x).powi(2) + (max_y - min_y).powi(2)).sqrt();
    let jitter = 1e-9 * diameter;

    let thetas: Vec<f64> = (0..b)
        .into_par_iter()
        .map(|bi| {
            let mut rng = seeds::derived_rng(seed, bi as u64);
            let n = points.len();
            let mut resampled: Vec<Point2> =
                (0..n).map(|_| points[rng.random_range(0..n)]).collect();
            // Identical draws are perturbed until the cloud is duplicate-free.
            loop {
                let mut seen = std::collections::HashSet::with_capacity(n);
                let mut clean = true;
                for p in resampled.iter_mut() {
                    if !seen.insert((p.x.to_bits(), p.y.to_bits())) {
                        p.x += (rng.random::<f64>() * 2.0 - 1.0) * jitter;
                        p.y += (rng.random::<f64>() * 2.0 - 1.0) * jitter;
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            alpha_diagram(&resampled, k).map(|dgm| bottleneck(&base, &dgm))
        })
        .collect::<Result<_, _>>()?;
    Ok(quantile_hat(&thetas, alpha))
}

//! Global rank envelopes: extreme rank ordering of a curve among a set, the
//! l-th bounding curves, and the conservative extreme rank envelope test of
//! one observed curve against simulated ones.

use thiserror::Error;

use crate::apf::CurveSample;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("curves are not on the same grid")]
    GridMismatch,
    #[error("bounding-curve depth {l} outside 1..={max}")]
    BadRank { l: usize, max: usize },
    #[error("per-statistic curve lists have mismatching lengths")]
    LengthMismatch,
    #[error("need at least {0} curves")]
    TooFewCurves(usize),
}

/// Outcome of the extreme rank envelope test.
#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    /// Depth of the 100(1-alpha)% global rank envelope.
    pub l_alpha: usize,
    /// Lower and upper bounding curves at depth `l_alpha`.
    pub lower: CurveSample,
    pub upper: CurveSample,
    /// Extreme ranks R_0..R_r (the observed curve first).
    pub ranks: Vec<usize>,
    /// Fraction of curves with rank strictly below the observed one.
    pub statistic: f64,
    /// True iff the observed curve leaves the `l_alpha` envelope somewhere.
    pub reject: bool,
    /// Set when no envelope depth satisfied the level constraint and
    /// `l_alpha` fell back to 1. Cannot happen for alpha > 0 since every rank
    /// is at least 1.
    pub no_valid_l: bool,
}

/// Pointwise l-th smallest and largest values over a set of curves on a
/// shared grid.
pub fn bounding_curves(
    curves: &[CurveSample],
    l: usize,
) -> Result<(CurveSample, CurveSample), EnvelopeError> {
    CurveSample::common_grid(curves).map_err(|_| EnvelopeError::GridMismatch)?;
    if curves.len() < 2 {
        return Err(EnvelopeError::TooFewCurves(2));
    }
    let r = curves.len() - 1;
    let max = r / 2;
    if l == 0 || l > max {
        return Err(EnvelopeError::BadRank { l, max });
    }
    let n_grid = curves[0].n_grid();
    let mut lower = curves[0].clone();
    let mut upper = curves[0].clone();
    let mut column = vec![0.0; curves.len()];
    for g in 0..n_grid {
        for (i, c) in curves.iter().enumerate() {
            column[i] = c.values[g];
        }
        column.sort_by(|a, b| a.partial_cmp(b).unwrap());
        lower.values[g] = column[l - 1];
        upper.values[g] = column[column.len() - l];
    }
    Ok((lower, upper))
}

/// Extreme rank of every curve with respect to the whole set: the largest l
/// such that the curve stays inside the pointwise l-th order-statistic band
/// everywhere, capped at floor(r/2).
pub fn extreme_ranks(curves: &[CurveSample]) -> Result<Vec<usize>, EnvelopeError> {
    CurveSample::common_grid(curves).map_err(|_| EnvelopeError::GridMismatch)?;
    if curves.len() < 2 {
        return Err(EnvelopeError::TooFewCurves(2));
    }
    let n = curves.len();
    let cap = (n - 1) / 2;
    let n_grid = curves[0].n_grid();
    let mut ranks = vec![cap; n];
    let mut column = vec![0.0; n];
    for g in 0..n_grid {
        for (i, c) in curves.iter().enumerate() {
            column[i] = c.values[g];
        }
        column.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, c) in curves.iter().enumerate() {
            let v = c.values[g];
            // The curve satisfies lower_l <= v iff l <= #(values <= v), and
            // v <= upper_l iff l <= #(values >= v).
            let le = column.partition_point(|&x| x <= v);
            let ge = n - column.partition_point(|&x| x < v);
            ranks[i] = ranks[i].min(le.min(ge));
        }
    }
    Ok(ranks)
}

/// Conservative extreme rank envelope test of `observed` against `simulated`
/// null replicates: rejects iff the observed curve exits the 100(1-alpha)%
/// global rank envelope.
pub fn rank_envelope_test(
    observed: &CurveSample,
    simulated: &[CurveSample],
    alpha: f64,
) -> Result<EnvelopeResult, EnvelopeError> {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must be in (0, 1)");
    let mut curves = Vec::with_capacity(simulated.len() + 1);
    curves.push(observed.clone());
    curves.extend_from_slice(simulated);
    let ranks = extreme_ranks(&curves)?;
    let r = simulated.len();
    let cap = r / 2;

    // Count of curves with rank < l for each candidate depth l.
    let mut below = vec![0usize; cap + 2];
    for &rk in &ranks {
        if rk <= cap {
            below[rk + 1] += 1;
        }
    }
    for l in 1..below.len() {
        below[l] += below[l - 1];
    }
    let total = (r + 1) as f64;
    let mut l_alpha = 0usize;
    for (l, &count) in below.iter().enumerate().take(cap.max(1) + 1).skip(1) {
        if count as f64 / total <= alpha {
            l_alpha = l;
        }
    }
    let no_valid_l = l_alpha == 0;
    if no_valid_l {
        l_alpha = 1;
    }

    let (lower, upper) = bounding_curves(&curves, l_alpha)?;
    let reject = observed
        .values
        .iter()
        .zip(lower.values.iter().zip(&upper.values))
        .any(|(&v, (&lo, &hi))| v < lo || v > hi);
    let statistic =
        ranks.iter().filter(|&&rk| rk < ranks[0]).count() as f64 / total;
    Ok(EnvelopeResult { l_alpha, lower, upper, ranks, statistic, reject, no_valid_l })
}

/// Combined envelope test over several statistics (for instance the APFs of
/// dimensions 0 and 1): per subject the curves are concatenated end-to-end
/// into one long vector and the rank test is applied to those.
///
/// The returned band lives on a nominal [0, 1] grid over the concatenated
/// coordinates, in the order the statistics were given.
pub fn combine_envelopes(
    statistics: &[(CurveSample, Vec<CurveSample>)],
    alpha: f64,
) -> Result<EnvelopeResult, EnvelopeError> {
    if statistics.is_empty() {
        return Err(EnvelopeError::LengthMismatch);
    }
    let r = statistics[0].1.len();
    if statistics.iter().any(|(_, sims)| sims.len() != r) {
        return Err(EnvelopeError::LengthMismatch);
    }
    for (obs, sims) in statistics {
        let mut all = vec![obs.clone()];
        all.extend_from_slice(sims);
        CurveSample::common_grid(&all).map_err(|_| EnvelopeError::GridMismatch)?;
    }
    let observed = CurveSample {
        t1: 0.0,
        t2: 1.0,
        values: statistics.iter().flat_map(|s| s.0.values.iter().copied()).collect(),
    };
    let simulated: Vec<CurveSample> = (0..r)
        .map(|j| CurveSample {
            t1: 0.0,
            t2: 1.0,
            values: statistics.iter().flat_map(|s| s.1[j].values.iter().copied()).collect(),
        })
        .collect();
    rank_envelope_test(&observed, &simulated, alpha)
}

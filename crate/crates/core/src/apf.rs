//! Accumulated persistence functions: the rotated/rescaled diagram, the APF
//! step function, its discretization onto a shared grid, and distances
//! between discretized curves.

use serde::Serialize;
use thiserror::Error;

use crate::persistence::PersistenceDiagram;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("curves are not on the same grid")]
    GridMismatch,
}

/// One feature in meanage/lifetime coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RrpdPoint {
    pub meanage: f64,
    pub lifetime: f64,
    pub mult: u32,
}

/// Rotated and rescaled persistence diagram: (b, d) becomes
/// (m, l) = ((b+d)/2, d-b).
#[derive(Debug, Clone, PartialEq)]
pub struct Rrpd {
    pub points: Vec<RrpdPoint>,
}

impl Rrpd {
    /// Inverse transform back to birth-death pairs, multiplicities expanded.
    pub fn to_pairs(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for p in &self.points {
            for _ in 0..p.mult {
                out.push((p.meanage - p.lifetime / 2.0, p.meanage + p.lifetime / 2.0));
            }
        }
        out
    }
}

/// Meanage/lifetime transform of a diagram; coincident (m, l) pairs keep
/// their summed multiplicity.
pub fn to_rrpd(dgm: &PersistenceDiagram) -> Rrpd {
    let mut pts: Vec<RrpdPoint> = dgm
        .points
        .iter()
        .map(|p| RrpdPoint {
            meanage: (p.birth + p.death) / 2.0,
            lifetime: p.death - p.birth,
            mult: p.mult,
        })
        .collect();
    pts.sort_by(|a, b| (a.meanage, a.lifetime).partial_cmp(&(b.meanage, b.lifetime)).unwrap());
    let mut merged: Vec<RrpdPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        match merged.last_mut() {
            Some(last) if last.meanage == p.meanage && last.lifetime == p.lifetime => {
                last.mult += p.mult
            }
            _ => merged.push(p),
        }
    }
    Rrpd { points: merged }
}

/// Whether features dying after the allocated time are dropped before the
/// APF is formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    None,
    /// Excludes features with meanage + lifetime/2 > T.
    AllocatedTime(f64),
}

/// A right-continuous nondecreasing step function on [0, inf): jump of size
/// c*l at each meanage.
#[derive(Debug, Clone, PartialEq)]
pub struct Apf {
    /// (location, size) per jump, sorted by location, coincident locations
    /// merged.
    jumps: Vec<(f64, f64)>,
    /// Running totals after each jump.
    cumulative: Vec<f64>,
}

impl Apf {
    /// Builds a step function from raw (location, size) jumps: sorts them,
    /// merges coincident locations, and accumulates the running totals.
    pub fn from_jumps(mut raw: Vec<(f64, f64)>) -> Apf {
        raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut jumps: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (loc, size) in raw {
            match jumps.last_mut() {
                Some(last) if last.0 == loc => last.1 += size,
                _ => jumps.push((loc, size)),
            }
        }
        let mut cumulative = Vec::with_capacity(jumps.len());
        let mut acc = 0.0;
        for &(_, size) in &jumps {
            acc += size;
            cumulative.push(acc);
        }
        Apf { jumps, cumulative }
    }

    pub fn jumps(&self) -> &[(f64, f64)] {
        &self.jumps
    }

    /// Value at +infinity: the total persistence.
    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Sum of jump sizes at locations <= m (right-continuous).
    pub fn eval(&self, m: f64) -> f64 {
        let k = self.jumps.partition_point(|&(loc, _)| loc <= m);
        if k == 0 {
            0.0
        } else {
            self.cumulative[k - 1]
        }
    }
}

/// Builds the APF of an RRPD, optionally truncated to an allocated time.
pub fn apf_from_rrpd(rrpd: &Rrpd, truncation: Truncation) -> Apf {
    let raw: Vec<(f64, f64)> = rrpd
        .points
        .iter()
        .filter(|p| match truncation {
            Truncation::None => true,
            Truncation::AllocatedTime(t) => p.meanage + p.lifetime / 2.0 <= t,
        })
        .map(|p| (p.meanage, p.mult as f64 * p.lifetime))
        .collect();
    Apf::from_jumps(raw)
}

/// A function evaluated on an equidistant grid over [t1, t2]; the common
/// currency of every statistics module. All of them require identical
/// (window, grid size) across a sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub t1: f64,
    pub t2: f64,
    pub values: Vec<f64>,
}

impl CurveSample {
    pub fn n_grid(&self) -> usize {
        self.values.len()
    }

    pub fn grid_coord(&self, i: usize) -> f64 {
        if i + 1 == self.values.len() {
            self.t2
        } else {
            self.t1 + (self.t2 - self.t1) * i as f64 / (self.values.len() - 1) as f64
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.t2 - self.t1) / (self.values.len() - 1) as f64
    }

    pub fn same_grid(&self, other: &CurveSample) -> bool {
        self.t1 == other.t1 && self.t2 == other.t2 && self.values.len() == other.values.len()
    }

    /// Checks that every curve shares one grid.
    pub fn common_grid(curves: &[CurveSample]) -> Result<(), CurveError> {
        if let Some(first) = curves.first() {
            if curves[1..].iter().any(|c| !first.same_grid(c)) {
                return Err(CurveError::GridMismatch);
            }
        }
        Ok(())
    }

    /// Pointwise mean of a nonempty sample on a shared grid.
    pub fn mean(curves: &[CurveSample]) -> Result<CurveSample, CurveError> {
        CurveSample::common_grid(curves)?;
        let first = curves.first().ok_or(CurveError::GridMismatch)?;
        let mut values = vec![0.0; first.n_grid()];
        for c in curves {
            for (v, x) in values.iter_mut().zip(&c.values) {
                *v += x;
            }
        }
        let n = curves.len() as f64;
        values.iter_mut().for_each(|v| *v /= n);
        Ok(CurveSample { t1: first.t1, t2: first.t2, values })
    }
}

/// Evaluates an APF at `n_grid` equidistant points of [t1, t2].
pub fn discretize(apf: &Apf, t1: f64, t2: f64, n_grid: usize) -> CurveSample {
    assert!(t1 < t2, "window must satisfy T1 < T2");
    assert!(n_grid >= 2, "need at least two grid points");
    let mut out = CurveSample { t1, t2, values: vec![0.0; n_grid] };
    for i in 0..n_grid {
        out.values[i] = apf.eval(out.grid_coord(i));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    Sup,
    L1,
    L2,
}

/// Distance between two curves on a shared grid: the max-difference for Sup,
/// trapezoidal-rule integrals for L1 and L2.
pub fn curve_distance(a: &CurveSample, b: &CurveSample, norm: Norm) -> Result<f64, CurveError> {
    if !a.same_grid(b) {
        return Err(CurveError::GridMismatch);
    }
    let diffs = a.values.iter().zip(&b.values).map(|(x, y)| x - y);
    Ok(match norm {
        Norm::Sup => diffs.map(f64::abs).fold(0.0, f64::max),
        Norm::L1 => trapezoid(diffs.map(f64::abs), a.spacing()),
        Norm::L2 => trapezoid(diffs.map(|d| d * d), a.spacing()).sqrt(),
    })
}

/// Trapezoidal rule with spacing h: half weight on the two endpoints.
pub(crate) fn trapezoid(values: impl Iterator<Item = f64>, h: f64) -> f64 {
    let vals: Vec<f64> = values.collect();
    let n = vals.len();
    if n < 2 {
        return 0.0;
    }
    let mut s = 0.5 * (vals[0] + vals[n - 1]);
    for v in &vals[1..n - 1] {
        s += v;
    }
    s * h
}

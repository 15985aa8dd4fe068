//! Bottleneck distance between persistence diagrams under the L-infinity
//! ground metric with matching to the diagonal allowed.

use super::PersistenceDiagram;

/// W-infinity distance between two diagrams of the same dimension, computed
/// by binary search over candidate radii with a bipartite-matching
/// feasibility test at each probe. Multiplicity c expands a point into c
/// copies.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    assert_eq!(d1.dim, d2.dim, "diagrams must have the same dimension");
    bottleneck_points(&d1.expanded(), &d2.expanded())
}

fn linf(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

fn half_life(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

pub(crate) fn bottleneck_points(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> f64 {
    if p1.is_empty() && p2.is_empty() {
        return 0.0;
    }
    // Sending everything to the diagonal is always feasible, so the answer
    // never exceeds the largest half-lifetime.
    let ub = p1.iter().chain(p2).copied().map(half_life).fold(0.0f64, f64::max);

    // The optimum is attained at a point-to-point distance or at a
    // half-lifetime (a point-to-diagonal cost).
    let mut cands = vec![0.0, ub];
    cands.extend(p1.iter().chain(p2).copied().map(half_life).filter(|&c| c <= ub));
    for &a in p1 {
        for &b in p2 {
            let c = linf(a, b);
            if c <= ub {
                cands.push(c);
            }
        }
    }
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup();

    let mut lo = 0usize;
    let mut hi = cands.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(p1, p2, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

/// Is there a diagonal-allowed matching of max cost at most eps?
///
/// Points with half-lifetime at most eps can always be absorbed by the
/// diagonal, so such a matching exists iff the points with half-lifetime
/// beyond eps on each side can be covered by a point-to-point matching of
/// cost at most eps. The two covering conditions can be checked
/// independently: two matchings covering prescribed vertex sets on opposite
/// sides can always be merged into one covering both (Mendelsohn-Dulmage).
fn feasible(p1: &[(f64, f64)], p2: &[(f64, f64)], eps: f64) -> bool {
    let long1: Vec<usize> =
        (0..p1.len()).filter(|&i| half_life(p1[i]) > eps).collect();
    let long2: Vec<usize> =
        (0..p2.len()).filter(|&j| half_life(p2[j]) > eps).collect();
    saturates(&long1, p1, p2, eps) && saturates(&long2, p2, p1, eps)
}

/// Can every `longs` point of `from` be matched to a distinct point of `to`
/// within distance eps? Kuhn's augmenting-path matching.
fn saturates(longs: &[usize], from: &[(f64, f64)], to: &[(f64, f64)], eps: f64) -> bool {
    if longs.is_empty() {
        return true;
    }
    if to.is_empty() {
        return false;
    }
    let adj: Vec<Vec<usize>> = longs
        .iter()
        .map(|&i| (0..to.len()).filter(|&j| linf(from[i], to[j]) <= eps).collect())
        .collect();
    if adj.iter().any(|a| a.is_empty()) {
        return false;
    }
    let mut matched_to: Vec<usize> = vec![usize::MAX; to.len()];
    let mut visited = vec![false; to.len()];
    for li in 0..longs.len() {
        visited.iter_mut().for_each(|v| *v = false);
        if !augment(li, &adj, &mut matched_to, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(li: usize, adj: &[Vec<usize>], matched_to: &mut [usize], visited: &mut [bool]) -> bool {
    for &j in &adj[li] {
        if !visited[j] {
            visited[j] = true;
            if matched_to[j] == usize::MAX || augment(matched_to[j], adj, matched_to, visited) {
                matched_to[j] = li;
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::PersistenceDiagram;

    fn dgm(pairs: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::from_pairs(0, pairs.to_vec())
    }

    /// Exhaustive minimax matching for small diagrams.
    fn oracle(p1: &[(f64, f64)], p2: &[(f64, f64)]) -> f64 {
        fn rec(i: usize, used: u32, p1: &[(f64, f64)], p2: &[(f64, f64)]) -> f64 {
            if i == p1.len() {
                return (0..p2.len())
                    .filter(|j| used & (1 << j) == 0)
                    .map(|j| half_life(p2[j]))
                    .fold(0.0f64, f64::max);
            }
            let mut best = half_life(p1[i]).max(rec(i + 1, used, p1, p2));
            for j in 0..p2.len() {
                if used & (1 << j) == 0 {
                    let c = linf(p1[i], p2[j]).max(rec(i + 1, used | (1 << j), p1, p2));
                    best = best.min(c);
                }
            }
            best
        }
        rec(0, 0, p1, p2)
    }

    #[test]
    fn identical_diagrams_are_at_distance_zero() {
        let d = dgm(&[(0.0, 1.0), (0.5, 2.0), (0.5, 2.0)]);
        assert_eq!(bottleneck(&d, &d), 0.0);
    }

    #[test]
    fn diagonal_beats_direct_match() {
        // Matching both points to the diagonal costs max(0.5, 2) = 2, better
        // than the direct match cost 3.
        assert_eq!(bottleneck(&dgm(&[(0.0, 1.0)]), &dgm(&[(0.0, 4.0)])), 2.0);
    }

    #[test]
    fn single_point_versus_empty() {
        assert_eq!(bottleneck(&dgm(&[(0.0, 2.0)]), &dgm(&[])), 1.0);
        assert_eq!(bottleneck(&dgm(&[]), &dgm(&[(0.0, 2.0)])), 1.0);
    }

    #[test]
    fn multiplicity_expands_points() {
        // Two copies of (0, 2) cannot share the single target point.
        let a = dgm(&[(0.0, 2.0), (0.0, 2.0)]);
        let b = dgm(&[(0.0, 2.0)]);
        assert_eq!(bottleneck(&a, &b), 1.0);
    }

    #[test]
    fn matches_exhaustive_oracle_and_is_a_metric() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 1000) as f64 / 500.0
        };
        let random_dgm = |next: &mut dyn FnMut() -> f64, n: usize| -> Vec<(f64, f64)> {
            (0..n)
                .map(|_| {
                    let b = next();
                    (b, b + next() + 1e-3)
                })
                .collect()
        };
        for trial in 0..200 {
            let n1 = trial % 5;
            let n2 = (trial / 5) % 6;
            let p1 = random_dgm(&mut next, n1);
            let p2 = random_dgm(&mut next, n2);
            let p3 = random_dgm(&mut next, 3);
            let d12 = bottleneck_points(&p1, &p2);
            assert_eq!(d12, oracle(&p1, &p2), "oracle mismatch {p1:?} {p2:?}");
            assert_eq!(d12, bottleneck_points(&p2, &p1));
            let d13 = bottleneck_points(&p1, &p3);
            let d23 = bottleneck_points(&p2, &p3);
            assert!(d13 <= d12 + d23 + 1e-12);
        }
    }
}

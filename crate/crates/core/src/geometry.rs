//! Planar Delaunay triangulation and the alpha-complex filtration built on it.
//!
//! The triangulation is built by incremental Bowyer-Watson insertion over a
//! layer of ghost triangles sharing a virtual vertex at infinity, so hull
//! growth needs no special casing. All orientation and in-circle decisions go
//! through the exact-sign predicates in [`predicates`], and cocircular ties
//! are broken by insertion order (a later point is treated as lying outside
//! the circle through earlier points), which makes the result a deterministic
//! function of the input sequence.

use serde::Serialize;
use thiserror::Error;

pub mod predicates;

use predicates::{incircle, orient2d};

/// A point of the input cloud.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    fn coords(&self) -> [f64; 2] {
        [self.x, self.y]
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("need at least 3 points to triangulate, got {0}")]
    TooFewPoints(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("all points are collinear")]
    AllCollinear,
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
}

/// Delaunay triangulation of a planar point set.
///
/// `triangles` are counterclockwise vertex triples; `edges` is the union of
/// triangle edges as sorted index pairs in lexicographic order.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub points: Vec<Point2>,
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<[usize; 2]>,
}

/// One simplex of a filtration. `verts[..=dim]` are the (sorted) vertex
/// indices; the remaining slots are unused.
#[derive(Debug, Clone, Copy)]
pub struct Simplex {
    pub dim: u8,
    pub verts: [usize; 3],
    pub value: f64,
}

impl Simplex {
    pub fn vertex(value: f64, v: usize) -> Self {
        Simplex { dim: 0, verts: [v, usize::MAX, usize::MAX], value }
    }

    pub fn edge(value: f64, mut a: usize, mut b: usize) -> Self {
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        Simplex { dim: 1, verts: [a, b, usize::MAX], value }
    }

    pub fn triangle(value: f64, mut v: [usize; 3]) -> Self {
        v.sort_unstable();
        Simplex { dim: 2, verts: v, value }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts[..=self.dim as usize]
    }
}

/// A simplicial filtration: simplices plus the insertion ordering, sorted by
/// (value, dimension, stable index) so faces always precede cofaces.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub simplices: Vec<Simplex>,
    pub order: Vec<usize>,
}

impl Filtration {
    /// Builds the ordering for an arbitrary simplex list. The caller must
    /// supply values with value(face) <= value(coface).
    pub fn from_simplices(simplices: Vec<Simplex>) -> Self {
        let mut order: Vec<usize> = (0..simplices.len()).collect();
        order.sort_by(|&a, &b| {
            let sa = &simplices[a];
            let sb = &simplices[b];
            sa.value
                .partial_cmp(&sb.value)
                .expect("filtration values must be finite")
                .then(sa.dim.cmp(&sb.dim))
                .then(a.cmp(&b))
        });
        Filtration { simplices, order }
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices.iter().filter(|s| s.dim == 0).count()
    }

    /// Simplices in filtration order.
    pub fn ordered(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.order.iter().map(move |&i| &self.simplices[i])
    }
}

const INF: usize = usize::MAX;

#[derive(Clone, Copy)]
struct Tri {
    v: [usize; 3],
    nbr: [usize; 3],
    alive: bool,
}

impl Tri {
    fn inf_slot(&self) -> Option<usize> {
        self.v.iter().position(|&x| x == INF)
    }
}

struct Builder<'a> {
    pts: &'a [Point2],
    tris: Vec<Tri>,
    mark: Vec<u32>,
    epoch: u32,
    last: usize,
}

impl<'a> Builder<'a> {
    fn coords(&self, v: usize) -> [f64; 2] {
        self.pts[v].coords()
    }

    /// Is `p` strictly inside the (possibly degenerate) circumdisc of `t`?
    ///
    /// For a ghost triangle the circumdisc is the open half-plane on the
    /// outer side of its real edge, together with the open edge itself.
    fn is_bad(&self, t: usize, p: [f64; 2]) -> bool {
        let tri = &self.tris[t];
        match tri.inf_slot() {
            None => {
                incircle(
                    self.coords(tri.v[0]),
                    self.coords(tri.v[1]),
                    self.coords(tri.v[2]),
                    p,
                ) > 0.0
            }
            Some(k) => {
                let u = self.coords(tri.v[(k + 1) % 3]);
                let v = self.coords(tri.v[(k + 2) % 3]);
                let o = orient2d(u, v, p);
                if o > 0.0 {
                    return true;
                }
                if o < 0.0 {
                    return false;
                }
                // Collinear: inside the open segment counts as inside.
                strictly_between(u, v, p)
            }
        }
    }

    fn locate_bad(&self, p: [f64; 2]) -> usize {
        let mut t = self.last;
        let mut steps = 0usize;
        let cap = 4 * self.tris.len() + 16;
        loop {
            if !self.tris[t].alive {
                break;
            }
            let tri = &self.tris[t];
            if tri.inf_slot().is_some() {
                if self.is_bad(t, p) {
                    return t;
                }
                break;
            }
            let mut moved = false;
            for i in 0..3 {
                let e = (steps + i) % 3;
                let u = self.coords(tri.v[(e + 1) % 3]);
                let v = self.coords(tri.v[(e + 2) % 3]);
                if orient2d(u, v, p) < 0.0 {
                    t = tri.nbr[e];
                    moved = true;
                    break;
                }
            }
            if !moved {
                // p lies in the closed triangle, hence in its open circumdisc.
                return t;
            }
            steps += 1;
            if steps > cap {
                break;
            }
        }
        // Degenerate walk; fall back to a scan. Correctness never depends on
        // the walk.
        (0..self.tris.len())
            .find(|&i| self.tris[i].alive && self.is_bad(i, p))
            .expect("point must invalidate some triangle")
    }

    fn insert(&mut self, pi: usize) {
        let p = self.coords(pi);
        let seed = self.locate_bad(p);

        self.epoch += 1;
        self.mark.resize(self.tris.len(), 0);
        let mut cavity = vec![seed];
        self.mark[seed] = self.epoch;
        let mut stack = vec![seed];
        while let Some(t) = stack.pop() {
            for i in 0..3 {
                let n = self.tris[t].nbr[i];
                if self.mark[n] != self.epoch && self.is_bad(n, p) {
                    self.mark[n] = self.epoch;
                    cavity.push(n);
                    stack.push(n);
                }
            }
        }

        // Directed boundary edges (u, v, outer neighbour), oriented as they
        // appear in their cavity triangle.
        let mut boundary = Vec::with_capacity(cavity.len() + 2);
        for &t in &cavity {
            for i in 0..3 {
                let n = self.tris[t].nbr[i];
                if self.mark[n] != self.epoch {
                    let u = self.tris[t].v[(i + 1) % 3];
                    let v = self.tris[t].v[(i + 2) % 3];
                    boundary.push((u, v, n));
                }
            }
        }
        for &t in &cavity {
            self.tris[t].alive = false;
        }

        // One new triangle (u, v, p) per boundary edge; the fan around p is
        // linked through the boundary cycle, which visits each vertex once as
        // an edge start and once as an edge end.
        let base = self.tris.len();
        let mut start_of = std::collections::HashMap::with_capacity(boundary.len());
        let mut end_of = std::collections::HashMap::with_capacity(boundary.len());
        for (j, &(u, v, _)) in boundary.iter().enumerate() {
            let a = start_of.insert(u, base + j);
            let b = end_of.insert(v, base + j);
            debug_assert!(a.is_none() && b.is_none(), "cavity boundary must be a simple cycle");
        }
        for (j, &(u, v, outer)) in boundary.iter().enumerate() {
            let me = base + j;
            self.tris.push(Tri {
                v: [u, v, pi],
                // nbr[0] opposite u = edge (v, p) -> the fan triangle starting
                // at v; nbr[1] opposite v = edge (p, u) -> the one ending at
                // u; nbr[2] opposite p = edge (u, v) -> outer.
                nbr: [start_of[&v], end_of[&u], outer],
                alive: true,
            });
            self.mark.push(0);
            // Retarget the outer triangle's pointer across (u, v).
            let out = &mut self.tris[outer];
            for i in 0..3 {
                let a = out.v[(i + 1) % 3];
                let b = out.v[(i + 2) % 3];
                if (a == u && b == v) || (a == v && b == u) {
                    out.nbr[i] = me;
                }
            }
        }
        self.last = base;
    }
}

fn strictly_between(u: [f64; 2], v: [f64; 2], p: [f64; 2]) -> bool {
    if p == u || p == v {
        return false;
    }
    if u[0] != v[0] {
        (u[0] < p[0]) != (v[0] < p[0])
    } else {
        (u[1] < p[1]) != (v[1] < p[1])
    }
}

/// Delaunay triangulation with exact predicates.
///
/// Fails on fewer than three points, duplicate points, and fully collinear
/// input.
pub fn delaunay(points: &[Point2]) -> Result<Triangulation, GeometryError> {
    for (i, p) in points.iter().enumerate() {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(GeometryError::NonFinite(i));
        }
    }
    if points.len() < 3 {
        return Err(GeometryError::TooFewPoints(points.len()));
    }
    let mut by_coord: Vec<usize> = (0..points.len()).collect();
    by_coord.sort_by(|&a, &b| {
        (points[a].x, points[a].y)
            .partial_cmp(&(points[b].x, points[b].y))
            .unwrap()
    });
    for w in by_coord.windows(2) {
        let (a, b) = (w[0], w[1]);
        if points[a] == points[b] {
            return Err(GeometryError::DuplicatePoints(a.min(b), a.max(b)));
        }
    }

    let p0 = points[0].coords();
    let p1 = points[1].coords();
    let i2 = (2..points.len())
        .find(|&k| orient2d(p0, p1, points[k].coords()) != 0.0)
        .ok_or(GeometryError::AllCollinear)?;

    // Initial triangle, counterclockwise.
    let (a, b, c) = if orient2d(p0, p1, points[i2].coords()) > 0.0 {
        (0, 1, i2)
    } else {
        (1, 0, i2)
    };
    // Real triangle 0 plus one ghost per hull edge; ghost k sits across the
    // edge opposite vertex k of the real triangle.
    let tris = vec![
        Tri { v: [a, b, c], nbr: [1, 2, 3], alive: true },
        Tri { v: [c, b, INF], nbr: [3, 2, 0], alive: true }, // across (b, c)
        Tri { v: [a, c, INF], nbr: [1, 3, 0], alive: true }, // across (c, a)
        Tri { v: [b, a, INF], nbr: [2, 1, 0], alive: true }, // across (a, b)
    ];
    let mut bld = Builder { pts: points, tris, mark: vec![0; 4], epoch: 0, last: 0 };

    for pi in 2..points.len() {
        if pi == i2 {
            continue;
        }
        bld.insert(pi);
    }

    let mut triangles: Vec<[usize; 3]> = bld
        .tris
        .iter()
        .filter(|t| t.alive && t.inf_slot().is_none())
        .map(|t| t.v)
        .collect();
    triangles.sort_by_key(|t| {
        let mut s = *t;
        s.sort_unstable();
        s
    });
    let mut edges: Vec<[usize; 2]> = triangles
        .iter()
        .flat_map(|t| {
            [[t[0], t[1]], [t[1], t[2]], [t[2], t[0]]]
                .into_iter()
                .map(|[x, y]| [x.min(y), x.max(y)])
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();

    Ok(Triangulation { points: points.to_vec(), triangles, edges })
}

fn circumradius(a: Point2, b: Point2, c: Point2) -> f64 {
    let bx = b.x - a.x;
    let by = b.y - a.y;
    let cx = c.x - a.x;
    let cy = c.y - a.y;
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    (ux * ux + uy * uy).sqrt()
}

/// Alpha-complex filtration values on a Delaunay triangulation: vertices at 0,
/// each triangle at its circumradius, each edge at half its length when its
/// diametral disc is empty (a Gabriel edge) and otherwise at the smallest
/// circumradius among its incident triangles.
pub fn alpha_filtration(tri: &Triangulation) -> Filtration {
    let pts = &tri.points;
    let mut simplices = Vec::with_capacity(pts.len() + tri.edges.len() + tri.triangles.len());
    for v in 0..pts.len() {
        simplices.push(Simplex::vertex(0.0, v));
    }

    let tri_values: Vec<f64> = tri
        .triangles
        .iter()
        .map(|t| circumradius(pts[t[0]], pts[t[1]], pts[t[2]]))
        .collect();

    // Incident triangles (at most two) and their opposite vertices per edge.
    let mut incident: std::collections::HashMap<[usize; 2], Vec<(usize, usize)>> =
        std::collections::HashMap::with_capacity(tri.edges.len());
    for (ti, t) in tri.triangles.iter().enumerate() {
        for k in 0..3 {
            let a = t[k];
            let b = t[(k + 1) % 3];
            let w = t[(k + 2) % 3];
            incident.entry([a.min(b), a.max(b)]).or_default().push((ti, w));
        }
    }

    for e in &tri.edges {
        let pa = pts[e[0]];
        let pb = pts[e[1]];
        let half = 0.5 * pa.dist(&pb);
        let inc = &incident[e];
        // The diametral disc of a Delaunay edge is empty iff it excludes the
        // opposite vertices of the incident triangles.
        let mx = 0.5 * (pa.x + pb.x);
        let my = 0.5 * (pa.y + pb.y);
        let r2 = (pa.x - mx) * (pa.x - mx) + (pa.y - my) * (pa.y - my);
        let gabriel = inc.iter().all(|&(_, w)| {
            let dx = pts[w].x - mx;
            let dy = pts[w].y - my;
            dx * dx + dy * dy >= r2
        });
        let min_r = inc.iter().map(|&(ti, _)| tri_values[ti]).fold(f64::INFINITY, f64::min);
        let value = if gabriel { half.min(min_r) } else { min_r };
        simplices.push(Simplex::edge(value, e[0], e[1]));
    }

    for (ti, t) in tri.triangles.iter().enumerate() {
        simplices.push(Simplex::triangle(tri_values[ti], *t));
    }

    Filtration::from_simplices(simplices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn three_points_give_single_triangle() {
        let t = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert_eq!(t.triangles.len(), 1);
        assert_eq!(t.edges.len(), 3);
        let tr = t.triangles[0];
        assert!(
            orient2d(
                t.points[tr[0]].coords(),
                t.points[tr[1]].coords(),
                t.points[tr[2]].coords()
            ) > 0.0
        );
    }

    #[test]
    fn cocircular_square_shares_bottom_edge() {
        // All four points lie on the circle centred at (1, 0); insertion
        // order decides the diagonal, and it must pick (0,0)-(2,0).
        let t = delaunay(&pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, -1.0)])).unwrap();
        assert_eq!(t.triangles.len(), 2);
        assert!(t.edges.contains(&[0, 1]));
        assert_eq!(t.edges.len(), 5);
    }

    #[test]
    fn collinear_points_rejected() {
        let err = delaunay(&pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)])).unwrap_err();
        assert_eq!(err, GeometryError::AllCollinear);
    }

    #[test]
    fn duplicates_rejected() {
        let err = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0)])).unwrap_err();
        assert_eq!(err, GeometryError::DuplicatePoints(1, 3));
    }

    #[test]
    fn too_few_points_rejected() {
        let err = delaunay(&pts(&[(0.0, 0.0), (1.0, 0.0)])).unwrap_err();
        assert_eq!(err, GeometryError::TooFewPoints(2));
    }

    #[test]
    fn equilateral_alpha_values() {
        let s = 1.0f64;
        let t = delaunay(&pts(&[(0.0, 0.0), (s, 0.0), (s / 2.0, s * 3f64.sqrt() / 2.0)])).unwrap();
        let f = alpha_filtration(&t);
        let mut edge_vals: Vec<f64> =
            f.simplices.iter().filter(|s| s.dim == 1).map(|s| s.value).collect();
        edge_vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for v in edge_vals {
            assert!((v - 0.5).abs() < 1e-14);
        }
        let tri_val = f.simplices.iter().find(|s| s.dim == 2).unwrap().value;
        assert!((tri_val - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!(f.simplices.iter().filter(|s| s.dim == 0).all(|s| s.value == 0.0));
    }

    #[test]
    fn obtuse_long_edge_is_not_gabriel() {
        let t = delaunay(&pts(&[(0.0, 0.0), (4.0, 0.0), (2.0, 0.5)])).unwrap();
        let f = alpha_filtration(&t);
        let long_edge = f
            .simplices
            .iter()
            .find(|s| s.dim == 1 && s.verts[0] == 0 && s.verts[1] == 1)
            .unwrap();
        let tri = f.simplices.iter().find(|s| s.dim == 2).unwrap();
        // Diametral disc of (0,0)-(4,0) contains (2,0.5), so the edge enters
        // with the triangle, not at half its length (which would be 2).
        assert_eq!(long_edge.value, tri.value);
        assert!((long_edge.value - 4.25).abs() < 1e-12);
    }

    #[test]
    fn filtration_order_is_face_before_coface() {
        let t = delaunay(&pts(&[
            (0.13, 0.9),
            (0.62, 0.23),
            (0.55, 0.77),
            (0.99, 0.01),
            (0.25, 0.4),
            (0.01, 0.2),
            (0.7, 0.55),
        ]))
        .unwrap();
        let f = alpha_filtration(&t);
        let mut seen: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for s in f.ordered() {
            match s.dim {
                0 => {}
                1 => {
                    for v in s.vertices() {
                        assert!(seen.contains(&vec![*v]));
                    }
                }
                _ => {
                    let v = s.vertices();
                    for pair in [[v[0], v[1]], [v[0], v[2]], [v[1], v[2]]] {
                        assert!(seen.contains(&pair.to_vec()));
                    }
                }
            }
            seen.insert(s.vertices().to_vec());
        }
    }

    #[test]
    fn random_cloud_is_delaunay() {
        // Fixed pseudo-random cloud; brute-force empty-circumdisc check.
        let mut state = 42u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let cloud: Vec<Point2> = (0..120).map(|_| Point2::new(next(), next())).collect();
        let t = delaunay(&cloud).unwrap();
        for tr in &t.triangles {
            for (i, p) in cloud.iter().enumerate() {
                if tr.contains(&i) {
                    continue;
                }
                assert!(
                    incircle(
                        cloud[tr[0]].coords(),
                        cloud[tr[1]].coords(),
                        cloud[tr[2]].coords(),
                        p.coords(),
                    ) <= 0.0,
                    "triangle {tr:?} contains point {i}"
                );
            }
        }
        // Euler relation for a triangulated disc: V - E + F = 1.
        assert_eq!(
            cloud.len() as i64 - t.edges.len() as i64 + t.triangles.len() as i64,
            1
        );
    }
}

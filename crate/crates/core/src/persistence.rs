//! Persistence diagrams: dimension 0 and 1 from an alpha filtration,
//! dimension 0 from a height-filtered graph, and the bottleneck distance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Filtration;
use crate::seeds;
use rand::Rng;

mod bottleneck;
pub use bottleneck::bottleneck;

/// One diagram entry: a birth-death pair with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub birth: f64,
    pub death: f64,
    pub mult: u32,
}

/// Finite multiset of birth-death pairs for one homology dimension. Points
/// are sorted by (birth, death); pairs with equal coordinates are merged into
/// one entry with summed multiplicity, and zero-lifetime pairs as well as the
/// class that never dies are excluded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub dim: usize,
    pub points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn empty(dim: usize) -> Self {
        PersistenceDiagram { dim, points: Vec::new() }
    }

    /// Normalizes raw pairs: drops zero-lifetime pairs, merges duplicates.
    pub fn from_pairs(dim: usize, mut pairs: Vec<(f64, f64)>) -> Self {
        pairs.retain(|&(b, d)| d > b);
        pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut points: Vec<DiagramPoint> = Vec::new();
        for (b, d) in pairs {
            match points.last_mut() {
                Some(last) if last.birth == b && last.death == d => last.mult += 1,
                _ => points.push(DiagramPoint { birth: b, death: d, mult: 1 }),
            }
        }
        PersistenceDiagram { dim, points }
    }

    /// Total number of features counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.mult as usize).sum()
    }

    /// Birth-death pairs with multiplicities expanded.
    pub fn expanded(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for p in &self.points {
            for _ in 0..p.mult {
                out.push((p.birth, p.death));
            }
        }
        out
    }
}

/// How equal-birth merges pick the surviving component. The diagram itself is
/// the same either way; only internal survivor labels differ.
#[derive(Debug, Clone, Copy)]
pub enum TieBreak {
    /// The component whose birth vertex has the smallest original index
    /// survives.
    Deterministic,
    /// Ties decided by fair coin flips from a seeded generator, mirroring the
    /// "decided uniformly at random" rule.
    Seeded(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateId(i64),
    #[error("edge references unknown vertex id {0}")]
    UnknownVertexInEdge(i64),
    #[error("vertex {0} has a non-finite height")]
    NonFiniteHeight(i64),
}

#[derive(Debug, Clone, Copy)]
pub struct GraphVertex {
    pub id: i64,
    pub height: f64,
    pub pos: Option<[f64; 3]>,
}

/// A geometric graph filtered by vertex height; edges enter at the larger
/// endpoint height.
#[derive(Debug, Clone)]
pub struct HeightGraph {
    vertices: Vec<GraphVertex>,
    /// Edges as indices into `vertices`.
    edges: Vec<(usize, usize)>,
}

impl HeightGraph {
    pub fn new(vertices: Vec<GraphVertex>, edge_ids: Vec<(i64, i64)>) -> Result<Self, GraphError> {
        let mut index = std::collections::HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !v.height.is_finite() {
                return Err(GraphError::NonFiniteHeight(v.id));
            }
            if index.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateId(v.id));
            }
        }
        let mut edges = Vec::with_capacity(edge_ids.len());
        for (a, b) in edge_ids {
            let ia = *index.get(&a).ok_or(GraphError::UnknownVertexInEdge(a))?;
            let ib = *index.get(&b).ok_or(GraphError::UnknownVertexInEdge(b))?;
            edges.push((ia, ib));
        }
        Ok(HeightGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

struct UnionFind {
    parent: Vec<usize>,
    birth: Vec<f64>,
    rep: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), birth: vec![f64::NAN; n], rep: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }
}

/// Union-find sweep over vertex/edge events in filtration order. Returns the
/// finite (birth, death) pairs; immortal components are discarded.
fn ph0_events(
    n_vertices: usize,
    births: impl Iterator<Item = (usize, f64)>,
    edges: impl Iterator<Item = (usize, usize, f64)>,
    tiebreak: TieBreak,
) -> Vec<(f64, f64)> {
    // Births are assigned up front; edges must arrive in nondecreasing value
    // order (the callers sort), and an edge value is never below the births
    // of its endpoints.
    let mut uf = UnionFind::new(n_vertices);
    for (v, h) in births {
        uf.birth[v] = h;
    }
    let mut rng = match tiebreak {
        TieBreak::Deterministic => None,
        TieBreak::Seeded(s) => Some(seeds::rng(s)),
    };
    let mut pairs = Vec::new();
    for (a, b, value) in edges {
        let ra = uf.find(a);
        let rb = uf.find(b);
        if ra == rb {
            continue;
        }
        let (ba, bb) = (uf.birth[ra], uf.birth[rb]);
        // Elder rule: the component with the older (smaller) birth survives.
        let a_survives = if ba < bb {
            true
        } else if bb < ba {
            false
        } else {
            match rng.as_mut() {
                None => uf.rep[ra] < uf.rep[rb],
                Some(r) => r.random::<bool>(),
            }
        };
        let (survivor, dying) = if a_survives { (ra, rb) } else { (rb, ra) };
        pairs.push((uf.birth[dying], value));
        uf.parent[dying] = survivor;
    }
    pairs
}

/// Persistence diagram of an alpha (or any vertex/edge/triangle) filtration.
///
/// Dimension 0 uses a union-find sweep with the elder rule; dimension 1 pairs
/// edges with triangles by boundary-matrix reduction over GF(2). Only the
/// triangle columns are ever reduced, which is the clearing optimization in
/// its strongest form: every paired edge column is skipped outright.
pub fn ph_pointcloud(filtration: &Filtration, k: usize, tiebreak: TieBreak) -> PersistenceDiagram {
    assert!(k <= 1, "only homology dimensions 0 and 1 are supported");
    if k == 0 {
        let n = filtration.vertex_count();
        let mut births = Vec::with_capacity(n);
        let mut edges = Vec::new();
        for s in filtration.ordered() {
            match s.dim {
                0 => births.push((s.verts[0], s.value)),
                1 => edges.push((s.verts[0], s.verts[1], s.value)),
                _ => {}
            }
        }
        let pairs = ph0_events(n, births.into_iter(), edges.into_iter(), tiebreak);
        PersistenceDiagram::from_pairs(0, pairs)
    } else {
        PersistenceDiagram::from_pairs(1, reduce_edge_triangle_pairs(filtration))
    }
}

/// Reduced triangle columns: (birth edge value, death triangle value) pairs.
fn reduce_edge_triangle_pairs(filtration: &Filtration) -> Vec<(f64, f64)> {
    let n = filtration.simplices.len();
    let mut pos_of = vec![0usize; n];
    for (pos, &si) in filtration.order.iter().enumerate() {
        pos_of[si] = pos;
    }
    // Edge simplex lookup by vertex pair.
    let mut edge_ix = std::collections::HashMap::new();
    for (si, s) in filtration.simplices.iter().enumerate() {
        if s.dim == 1 {
            edge_ix.insert([s.verts[0], s.verts[1]], si);
        }
    }

    let mut pivot_owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut cols: Vec<Vec<usize>> = Vec::new();
    let mut pairs = Vec::new();

    for &si in &filtration.order {
        let s = &filtration.simplices[si];
        if s.dim != 2 {
            continue;
        }
        let [a, b, c] = s.verts;
        let mut col: Vec<usize> = [[a, b], [a, c], [b, c]]
            .iter()
            .map(|e| pos_of[edge_ix[e]])
            .collect();
        col.sort_unstable();
        loop {
            let low = *col.last().expect("triangle boundary cannot vanish in the plane");
            match pivot_owner.get(&low) {
                Some(&owner) => col = symmetric_difference(&col, &cols[owner]),
                None => {
                    pivot_owner.insert(low, cols.len());
                    let edge_value = filtration.simplices[filtration.order[low]].value;
                    pairs.push((edge_value, s.value));
                    cols.push(col);
                    break;
                }
            }
        }
    }
    pairs
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Dimension-0 sub-level persistence of a height graph: vertices enter at
/// their height, edges at the larger endpoint height, components merge by the
/// elder rule. Components that never die (one per connected component of the
/// graph, including the global minimum's) are discarded.
pub fn ph_sublevel(graph: &HeightGraph, tiebreak: TieBreak) -> PersistenceDiagram {
    let nv = graph.vertices().len();
    // (value, dim, stable index) ordering over vertex and edge events.
    let mut events: Vec<(f64, u8, usize)> = Vec::with_capacity(nv + graph.edges().len());
    for (i, v) in graph.vertices().iter().enumerate() {
        events.push((v.height, 0, i));
    }
    for (i, &(a, b)) in graph.edges().iter().enumerate() {
        let value = graph.vertices()[a].height.max(graph.vertices()[b].height);
        events.push((value, 1, i));
    }
    events.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let births = graph.vertices().iter().enumerate().map(|(i, v)| (i, v.height));
    let edges = events.iter().filter(|e| e.1 == 1).map(|&(value, _, i)| {
        let (a, b) = graph.edges()[i];
        (a, b, value)
    });
    let pairs = ph0_events(nv, births, edges, tiebreak);
    PersistenceDiagram::from_pairs(0, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{alpha_filtration, delaunay, Point2, Simplex};

    fn alpha(points: &[(f64, f64)]) -> Filtration {
        let pts: Vec<Point2> = points.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        alpha_filtration(&delaunay(&pts).unwrap())
    }

    #[test]
    fn equilateral_triangle_diagrams() {
        let s = 1.0;
        let f = alpha(&[(0.0, 0.0), (s, 0.0), (s / 2.0, s * 3f64.sqrt() / 2.0)]);
        let d0 = ph_pointcloud(&f, 0, TieBreak::Deterministic);
        assert_eq!(d0.points.len(), 1);
        assert_eq!(d0.points[0].mult, 2);
        assert_eq!(d0.points[0].birth, 0.0);
        assert!((d0.points[0].death - 0.5).abs() < 1e-15);

        let d1 = ph_pointcloud(&f, 1, TieBreak::Deterministic);
        assert_eq!(d1.points.len(), 1);
        assert_eq!(d1.points[0].mult, 1);
        assert!((d1.points[0].birth - 0.5).abs() < 1e-15);
        assert!((d1.points[0].death - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn single_edge_filtration() {
        let f = Filtration::from_simplices(vec![
            Simplex::vertex(0.0, 0),
            Simplex::vertex(0.0, 1),
            Simplex::edge(1.0, 0, 1),
        ]);
        let d0 = ph_pointcloud(&f, 0, TieBreak::Deterministic);
        assert_eq!(d0.points, vec![DiagramPoint { birth: 0.0, death: 1.0, mult: 1 }]);
        let d1 = ph_pointcloud(&f, 1, TieBreak::Deterministic);
        assert!(d1.points.is_empty());
    }

    #[test]
    fn right_triangle_has_no_loop() {
        // The hypotenuse enters with the triangle; the loop it would create
        // dies instantly and is excluded as a zero-lifetime pair.
        let f = alpha(&[(0.0, 0.0), (4.0, 0.0), (2.0, 0.5)]);
        let d1 = ph_pointcloud(&f, 1, TieBreak::Deterministic);
        assert!(d1.points.is_empty());
    }

    fn graph(heights: &[f64], edges: &[(i64, i64)]) -> HeightGraph {
        let vertices = heights
            .iter()
            .enumerate()
            .map(|(i, &h)| GraphVertex { id: i as i64, height: h, pos: None })
            .collect();
        HeightGraph::new(vertices, edges.to_vec()).unwrap()
    }

    #[test]
    fn sublevel_path_valley() {
        let g = graph(&[0.0, 1.0, 0.0], &[(0, 1), (1, 2)]);
        let d = ph_sublevel(&g, TieBreak::Deterministic);
        assert_eq!(d.points, vec![DiagramPoint { birth: 0.0, death: 1.0, mult: 1 }]);
    }

    #[test]
    fn sublevel_single_vertex() {
        let g = graph(&[3.0], &[]);
        assert!(ph_sublevel(&g, TieBreak::Deterministic).points.is_empty());
    }

    #[test]
    fn sublevel_star() {
        // Centre at height 5, leaves at 1, 2, 3: leaves at 2 and 3 die when
        // the centre appears; the leaf at 1 is the immortal class.
        let g = graph(&[5.0, 1.0, 2.0, 3.0], &[(0, 1), (0, 2), (0, 3)]);
        let d = ph_sublevel(&g, TieBreak::Deterministic);
        assert_eq!(
            d.points,
            vec![
                DiagramPoint { birth: 2.0, death: 5.0, mult: 1 },
                DiagramPoint { birth: 3.0, death: 5.0, mult: 1 },
            ]
        );
    }

    #[test]
    fn sublevel_disconnected_graph_drops_every_immortal() {
        // Two components, each with its own never-dying class.
        let g = graph(
            &[0.0, 5.0, 1.0, 10.0, 20.0, 11.0],
            &[(0, 1), (1, 2), (3, 4), (4, 5)],
        );
        let d = ph_sublevel(&g, TieBreak::Deterministic);
        assert_eq!(
            d.points,
            vec![
                DiagramPoint { birth: 1.0, death: 5.0, mult: 1 },
                DiagramPoint { birth: 11.0, death: 20.0, mult: 1 },
            ]
        );
    }

    #[test]
    fn graph_validation() {
        let vs = vec![
            GraphVertex { id: 1, height: 0.0, pos: None },
            GraphVertex { id: 2, height: 1.0, pos: None },
        ];
        let err = HeightGraph::new(vs.clone(), vec![(1, 9)]).unwrap_err();
        assert_eq!(err, GraphError::UnknownVertexInEdge(9));
        let mut dup = vs.clone();
        dup.push(GraphVertex { id: 1, height: 2.0, pos: None });
        assert_eq!(HeightGraph::new(dup, vec![]).unwrap_err(), GraphError::DuplicateId(1));
    }

    #[test]
    fn tie_break_does_not_change_the_diagram() {
        let pts: Vec<(f64, f64)> = (0..7)
            .flat_map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 7.0;
                [(a.cos(), a.sin())]
            })
            .collect();
        let f = alpha(&pts);
        let d = ph_pointcloud(&f, 0, TieBreak::Deterministic);
        for seed in [1u64, 7, 42] {
            assert_eq!(ph_pointcloud(&f, 0, TieBreak::Seeded(seed)), d);
        }
    }

    #[test]
    fn diagram_merges_multiplicities() {
        let d = PersistenceDiagram::from_pairs(0, vec![(0.0, 1.0), (0.0, 1.0), (0.0, 2.0)]);
        assert_eq!(
            d.points,
            vec![
                DiagramPoint { birth: 0.0, death: 1.0, mult: 2 },
                DiagramPoint { birth: 0.0, death: 2.0, mult: 1 },
            ]
        );
        assert_eq!(d.total_multiplicity(), 3);
    }
}

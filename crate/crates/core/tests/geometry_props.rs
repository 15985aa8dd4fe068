//! Brute-force checks of the triangulation and filtration invariants on
//! random and adversarial point sets.

use apf_core::geometry::{alpha_filtration, delaunay, predicates, GeometryError, Point2};
use proptest::prelude::*;

fn brute_force_delaunay_check(points: &[Point2]) {
    let tri = delaunay(points).unwrap();
    for t in &tri.triangles {
        let a = [points[t[0]].x, points[t[0]].y];
        let b = [points[t[1]].x, points[t[1]].y];
        let c = [points[t[2]].x, points[t[2]].y];
        assert!(predicates::orient2d(a, b, c) > 0.0, "triangle not counterclockwise");
        for (i, p) in points.iter().enumerate() {
            if t.contains(&i) {
                continue;
            }
            assert!(
                predicates::incircle(a, b, c, [p.x, p.y]) <= 0.0,
                "open circumdisc of {t:?} contains point {i}"
            );
        }
    }
    // A triangulated disc: V - E + F = 1.
    assert_eq!(
        points.len() as i64 - tri.edges.len() as i64 + tri.triangles.len() as i64,
        1
    );
}

fn brute_force_alpha_check(points: &[Point2]) {
    let tri = delaunay(points).unwrap();
    let filtration = alpha_filtration(&tri);
    let mut value_of_edge = std::collections::HashMap::new();
    let mut vertex_count = 0;
    for s in &filtration.simplices {
        match s.dim {
            0 => {
                assert_eq!(s.value, 0.0);
                vertex_count += 1;
            }
            1 => {
                value_of_edge.insert([s.verts[0], s.verts[1]], s.value);
            }
            _ => {}
        }
    }
    assert_eq!(vertex_count, points.len());

    // Edge values never exceed incident triangle values, and Gabriel edges
    // (diametral disc empty by brute force) sit at exactly half their length.
    for s in &filtration.simplices {
        if s.dim != 2 {
            continue;
        }
        let [a, b, c] = s.verts;
        for e in [[a, b], [a, c], [b, c]] {
            assert!(value_of_edge[&e] <= s.value + 1e-12);
        }
    }
    for (&[a, b], &value) in &value_of_edge {
        let pa = points[a];
        let pb = points[b];
        let mx = 0.5 * (pa.x + pb.x);
        let my = 0.5 * (pa.y + pb.y);
        let r2 = (pa.x - mx).powi(2) + (pa.y - my).powi(2);
        let empty = points.iter().enumerate().all(|(i, p)| {
            i == a || i == b || (p.x - mx).powi(2) + (p.y - my).powi(2) >= r2
        });
        let half = 0.5 * pa.dist(&pb);
        if empty {
            assert_eq!(value, half, "Gabriel edge must enter at half its length");
        } else {
            assert!(value >= half);
        }
    }
}

#[test]
fn random_clouds_are_delaunay_with_valid_alpha_values() {
    for rep in 0..40u64 {
        let n = 4 + (rep as usize * 5) % 197;
        let mut rng = apf_core::seeds::derived_rng(1000, rep);
        use rand::Rng;
        let pts: Vec<Point2> =
            (0..n).map(|_| Point2::new(rng.random(), rng.random())).collect();
        brute_force_delaunay_check(&pts);
        brute_force_alpha_check(&pts);
    }
}

#[test]
fn lattice_circle_with_interior_points_is_handled_exactly() {
    // Every boundary point lies exactly on the circle of radius 25: all
    // boundary triangles are exactly cocircular.
    let mut pts = Vec::new();
    for x in -25i64..=25 {
        for y in -25i64..=25 {
            if x * x + y * y == 625 {
                pts.push(Point2::new(x as f64, y as f64));
            }
        }
    }
    assert_eq!(pts.len(), 20);
    pts.push(Point2::new(0.0, 0.0));
    pts.push(Point2::new(3.0, 1.0));
    brute_force_delaunay_check(&pts);
    brute_force_alpha_check(&pts);
}

#[test]
fn collinear_grid_columns_are_triangulated() {
    // Exactly collinear runs force the orientation predicates through their
    // zero paths.
    let mut pts = Vec::new();
    for x in 0..6 {
        for y in 0..5 {
            pts.push(Point2::new(x as f64, y as f64 * 0.5));
        }
    }
    brute_force_delaunay_check(&pts);
    brute_force_alpha_check(&pts);
}

#[test]
fn duplicate_within_cloud_is_reported() {
    let mut pts = vec![
        Point2::new(0.25, 0.5),
        Point2::new(0.75, 0.25),
        Point2::new(0.5, 0.875),
        Point2::new(0.125, 0.125),
    ];
    pts.push(pts[1]);
    assert_eq!(delaunay(&pts).unwrap_err(), GeometryError::DuplicatePoints(1, 4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delaunay_holds_on_snapped_grids(raw in prop::collection::vec((0u8..32, 0u8..32), 3..40)) {
        // Snapping to a coarse grid makes collinear and cocircular quadruples
        // common, which is exactly where exact predicates earn their keep.
        let mut seen = std::collections::HashSet::new();
        let pts: Vec<Point2> = raw
            .into_iter()
            .filter(|p| seen.insert(*p))
            .map(|(x, y)| Point2::new(x as f64 / 8.0, y as f64 / 8.0))
            .collect();
        match delaunay(&pts) {
            Ok(_) => {
                brute_force_delaunay_check(&pts);
                brute_force_alpha_check(&pts);
            }
            Err(GeometryError::AllCollinear) | Err(GeometryError::TooFewPoints(_)) => {}
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}

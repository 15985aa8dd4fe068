//! Seeded simulators for the point-process designs used in the experiments:
//! noisy circle samples, CSR, the Baddeley-Silverman cell process, the Matérn
//! cluster process, and a Matérn II hard-core process as the regular
//! alternative. Every generator is a pure function of (parameters, seed).

use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::Serialize;

use crate::geometry::Point2;
use crate::seeds;

/// Axis-aligned observation window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        assert!(x1 > x0 && y1 > y0, "window must have positive area");
        Window { x0, x1, y0, y1 }
    }

    pub fn unit_square() -> Self {
        Window::new(0.0, 1.0, 0.0, 1.0)
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    fn extended(&self, margin: f64) -> Window {
        Window::new(self.x0 - margin, self.x1 + margin, self.y0 - margin, self.y1 + margin)
    }

    fn uniform(&self, rng: &mut impl Rng) -> Point2 {
        Point2::new(
            self.x0 + rng.random::<f64>() * (self.x1 - self.x0),
            self.y0 + rng.random::<f64>() * (self.y1 - self.y0),
        )
    }
}

/// A circle used as the support of noisy samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleSpec {
    pub center: Point2,
    pub radius: f64,
}

impl CircleSpec {
    pub fn new(cx: f64, cy: f64, radius: f64) -> Self {
        assert!(radius > 0.0, "circle radius must be positive");
        CircleSpec { center: Point2::new(cx, cy), radius }
    }
}

fn poisson_count(rng: &mut impl Rng, lambda: f64) -> usize {
    if lambda <= 0.0 {
        return 0;
    }
    Poisson::new(lambda).expect("finite positive mean").sample(rng) as usize
}

/// IID points on a union of circles: each point picks a circle with
/// probability proportional to its circumference, takes a uniform angle, and
/// is perturbed by bivariate normal noise restricted to [-10 sigma, 10 sigma]^2
/// (rejection sampling). `sigma = 0` means no noise.
pub fn sample_on_circles(n: usize, circles: &[CircleSpec], sigma: f64, seed: u64) -> Vec<Point2> {
    assert!(!circles.is_empty(), "need at least one circle");
    assert!(sigma >= 0.0);
    let mut rng = seeds::rng(seed);
    let total: f64 = circles.iter().map(|c| c.radius).sum();
    let normal = if sigma > 0.0 { Some(Normal::new(0.0, sigma).unwrap()) } else { None };
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut pick = rng.random::<f64>() * total;
        let mut circle = circles[circles.len() - 1];
        for c in circles {
            if pick < c.radius {
                circle = *c;
                break;
            }
            pick -= c.radius;
        }
        let angle = rng.random::<f64>() * std::f64::consts::TAU;
        let mut x = circle.center.x + circle.radius * angle.cos();
        let mut y = circle.center.y + circle.radius * angle.sin();
        if let Some(normal) = &normal {
            let bound = 10.0 * sigma;
            loop {
                let ex = normal.sample(&mut rng);
                let ey = normal.sample(&mut rng);
                if ex.abs() <= bound && ey.abs() <= bound {
                    x += ex;
                    y += ey;
                    break;
                }
            }
        }
        out.push(Point2::new(x, y));
    }
    out
}

/// Homogeneous Poisson process (CSR) with intensity `rho` per unit area.
pub fn poisson(rho: f64, window: &Window, seed: u64) -> Vec<Point2> {
    assert!(rho > 0.0);
    let mut rng = seeds::rng(seed);
    let count = poisson_count(&mut rng, rho * window.area());
    (0..count).map(|_| window.uniform(&mut rng)).collect()
}

/// Matérn cluster process: Poisson parents of intensity `kappa` on the window
/// extended by `cluster_radius` (so clusters centred outside still contribute),
/// each with Poisson(`mu`) offspring uniform in a disc of that radius. Only
/// offspring inside the window are kept; parents are not observed.
pub fn matern_cluster(
    kappa: f64,
    cluster_radius: f64,
    mu: f64,
    window: &Window,
    seed: u64,
) -> Vec<Point2> {
    assert!(kappa > 0.0 && cluster_radius > 0.0 && mu >= 0.0);
    let mut rng = seeds::rng(seed);
    let ext = window.extended(cluster_radius);
    let parents = poisson_count(&mut rng, kappa * ext.area());
    let mut out = Vec::new();
    for _ in 0..parents {
        let parent = ext.uniform(&mut rng);
        let offspring = poisson_count(&mut rng, mu);
        for _ in 0..offspring {
            let r = cluster_radius * rng.random::<f64>().sqrt();
            let a = rng.random::<f64>() * std::f64::consts::TAU;
            let p = Point2::new(parent.x + r * a.cos(), parent.y + r * a.sin());
            if window.contains(p) {
                out.push(p);
            }
        }
    }
    out
}

/// Baddeley-Silverman cell process: the window is divided into unit cells
/// (fractional boundary cells are dropped) and each cell independently
/// receives 0, 1, or 10 uniform points with probabilities 1/10, 8/9, 1/90,
/// matching the first and second moments of CSR with intensity 1.
pub fn baddeley_silverman(window: &Window, seed: u64) -> Vec<Point2> {
    let mut rng = seeds::rng(seed);
    let nx = (window.x1 - window.x0).floor() as usize;
    let ny = (window.y1 - window.y0).floor() as usize;
    let mut out = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let cell = Window::new(
                window.x0 + i as f64,
                window.x0 + (i + 1) as f64,
                window.y0 + j as f64,
                window.y0 + (j + 1) as f64,
            );
            let u = rng.random::<f64>();
            let count = if u < 0.1 {
                0
            } else if u < 0.1 + 8.0 / 9.0 {
                1
            } else {
                10
            };
            for _ in 0..count {
                out.push(cell.uniform(&mut rng));
            }
        }
    }
    out
}

/// Matérn type II hard-core process: Poisson proposals of intensity `beta`
/// with IID uniform marks; a proposal survives iff no proposal with a smaller
/// mark lies within distance `hardcore`. Proposals are drawn on the window
/// extended by the hard-core distance so the thinning matches the stationary
/// process inside the window.
pub fn matern_hardcore(beta: f64, hardcore: f64, window: &Window, seed: u64) -> Vec<Point2> {
    assert!(beta > 0.0 && hardcore > 0.0);
    let mut rng = seeds::rng(seed);
    let ext = window.extended(hardcore);
    let n = poisson_count(&mut rng, beta * ext.area());
    let proposals: Vec<(Point2, f64)> =
        (0..n).map(|_| (ext.uniform(&mut rng), rng.random::<f64>())).collect();
    let h2 = hardcore * hardcore;
    let mut out = Vec::new();
    for (i, &(p, mark)) in proposals.iter().enumerate() {
        if !window.contains(p) {
            continue;
        }
        let killed = proposals.iter().enumerate().any(|(j, &(q, other))| {
            if i == j {
                return false;
            }
            let dx = p.x - q.x;
            let dy = p.y - q.y;
            dx * dx + dy * dy <= h2 && (other, j) < (mark, i)
        });
        if !killed {
            out.push(p);
        }
    }
    out
}

//! Cross-module statistical checks at desk scale: combined envelopes on a
//! clustered alternative, the mean-curve band against fresh replicates, and
//! the resampled bottleneck radius on the two-circle design.

use apf_core::apf::{CurveSample, Truncation};
use apf_core::bootstrap::{bottleneck_radius, mean_band};
use apf_core::envelope::{combine_envelopes, rank_envelope_test};
use apf_core::pipeline::{alpha_diagram, apf_curve};
use apf_core::pointprocess::{matern_cluster, poisson, sample_on_circles, CircleSpec, Window};
use apf_core::seeds;

fn csr_curve(rho: f64, k: usize, window_t: f64, grid: usize, seed: u64) -> CurveSample {
    let pts = poisson(rho, &Window::unit_square(), seed);
    apf_curve(&pts, k, Truncation::None, 0.0, window_t, grid).unwrap()
}

#[test]
fn combined_envelope_is_as_strong_as_the_best_single_statistic() {
    // The conservative test needs floor(alpha (r+1)) to exceed the number of
    // curves that achieve a pointwise extreme somewhere, or the envelope
    // depth degenerates to 1 and nothing can be rejected. On this design the
    // concatenated curves have around 35 extreme achievers, so r = 999
    // (threshold 50) keeps the combined test informative.
    let reps = 20;
    let r = 999;
    let alpha = 0.05;
    let grid = 40;
    let t = 0.25;
    let mut rej = [0usize; 3]; // k = 0, k = 1, combined
    for rep in 0..reps {
        let base = seeds::derived(50_000, rep as u64);
        let obs_pts = matern_cluster(20.0, 0.05, 5.0, &Window::unit_square(), base);
        let obs0 = apf_curve(&obs_pts, 0, Truncation::None, 0.0, t, grid).unwrap();
        let obs1 = apf_curve(&obs_pts, 1, Truncation::None, 0.0, t, grid).unwrap();
        let mut sims0 = Vec::with_capacity(r);
        let mut sims1 = Vec::with_capacity(r);
        for i in 0..r {
            let s = seeds::derived(base, 1 + i as u64);
            let pts = poisson(100.0, &Window::unit_square(), s);
            sims0.push(apf_curve(&pts, 0, Truncation::None, 0.0, t, grid).unwrap());
            sims1.push(apf_curve(&pts, 1, Truncation::None, 0.0, t, grid).unwrap());
        }
        if rank_envelope_test(&obs0, &sims0, alpha).unwrap().reject {
            rej[0] += 1;
        }
        if rank_envelope_test(&obs1, &sims1, alpha).unwrap().reject {
            rej[1] += 1;
        }
        let combined = combine_envelopes(
            &[(obs0, sims0), (obs1, sims1)],
            alpha,
        )
        .unwrap();
        if combined.reject {
            rej[2] += 1;
        }
    }
    let rate = |c: usize| c as f64 / reps as f64;
    let best_single = rate(rej[0]).max(rate(rej[1]));
    assert!(
        rate(rej[2]) >= best_single - 0.05,
        "combined {} vs singles {} / {}",
        rate(rej[2]),
        rate(rej[0]),
        rate(rej[1])
    );
    // The clustered alternative must be visible at all on this design.
    assert!(rate(rej[0]) >= 0.9, "k=0 power {}", rate(rej[0]));
}

#[test]
fn mean_band_contains_the_mean_of_fresh_replicates() {
    let circles = [
        CircleSpec::new(-1.0, -1.0, 0.25),
        CircleSpec::new(0.0, 1.0, 0.25),
        CircleSpec::new(1.0, -1.0, 0.25),
    ];
    let grid = 300;
    let curve = |seed: u64| -> CurveSample {
        let pts = sample_on_circles(100, &circles, 0.0, seed);
        apf_curve(&pts, 0, Truncation::None, 0.0, 0.5, grid).unwrap()
    };
    let sample: Vec<CurveSample> = (0..50).map(|i| curve(seeds::derived(60_000, i))).collect();
    let band = mean_band(&sample, 0.05, 1000, 61_000).unwrap();

    let fresh: Vec<CurveSample> = (0..200).map(|i| curve(seeds::derived(62_000, i))).collect();
    let fresh_mean = CurveSample::mean(&fresh).unwrap();
    let inside = fresh_mean
        .values
        .iter()
        .zip(band.lower.values.iter().zip(&band.upper.values))
        .filter(|(&v, (&lo, &hi))| v >= lo && v <= hi)
        .count();
    assert!(
        inside as f64 >= 0.9 * grid as f64,
        "fresh mean inside at {inside}/{grid} grid points"
    );
}

#[test]
fn bottleneck_radius_squares_capture_the_true_loop_deaths() {
    // Two circles of radii 1 and 0.8; their loops die when the discs fill,
    // at the radii themselves. The two most persistent points of the sample
    // diagram must sit within the resampled radius of those deaths. (The
    // birth coordinate is a different story: a large sampling gap inflates
    // the observed birth and simultaneously deflates the resampling radius,
    // because every resample shares the same gap, so squares around the
    // observed points do not reliably reach birth zero on this scale.)
    let circles = [CircleSpec::new(-1.5, 0.0, 1.0), CircleSpec::new(1.5, 0.0, 0.8)];
    let reps = 20;
    let mut hits = 0;
    for rep in 0..reps {
        let pts = sample_on_circles(300, &circles, 0.0, seeds::derived(70_000, rep));
        let c = bottleneck_radius(&pts, 1, 200, 0.05, seeds::derived(71_000, rep)).unwrap();
        assert!(c > 0.0);
        let dgm = alpha_diagram(&pts, 1).unwrap();
        let mut points = dgm.points.clone();
        points.sort_by(|a, b| {
            (b.death - b.birth).partial_cmp(&(a.death - a.birth)).unwrap()
        });
        let ok = [1.0, 0.8].iter().all(|&td| {
            points[..2].iter().any(|p| (p.death - td).abs() <= c)
        });
        if ok {
            hits += 1;
        }
    }
    assert!(
        hits as f64 >= 0.9 * reps as f64,
        "true loop deaths captured in {hits}/{reps} replications"
    );
}

#[test]
fn bottleneck_radius_shrinks_with_denser_sampling() {
    let circles = [CircleSpec::new(-1.5, 0.0, 1.0), CircleSpec::new(1.5, 0.0, 0.8)];
    let mean_c = |n: usize, tag: u64| -> f64 {
        (0..3u64)
            .map(|rep| {
                let pts = sample_on_circles(n, &circles, 0.0, seeds::derived(tag, rep));
                bottleneck_radius(&pts, 1, 100, 0.05, seeds::derived(tag + 1, rep)).unwrap()
            })
            .sum::<f64>()
            / 3.0
    };
    let coarse = mean_c(300, 80_000);
    let fine = mean_c(500, 90_000);
    assert!(fine < coarse, "c at 500 points {fine} vs 300 points {coarse}");
}

//! Command implementations: every artifact embeds the producing
//! configuration and seed, and every randomized loop derives one stream per
//! iteration so reruns are byte-identical at any thread count.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use apf_core::apf::{apf_from_rrpd, discretize, to_rrpd, CurveSample, Truncation};
use apf_core::bootstrap::{mean_band, two_sample, TwoSampleStat};
use apf_core::envelope::{combine_envelopes, rank_envelope_test, EnvelopeResult};
use apf_core::fda::{classify, functional_boxplot, kmeans_curves};
use apf_core::geometry::Point2;
use apf_core::persistence::{ph_sublevel, TieBreak};
use apf_core::pipeline::apf_curve;
use apf_core::pointprocess::{
    baddeley_silverman, matern_cluster, matern_hardcore, poisson, sample_on_circles, CircleSpec,
    Window,
};
use apf_core::seeds;

use crate::error::CliError;
use crate::io;
use crate::svg;
use crate::{
    ApfArgs, BoxplotArgs, CiMeanArgs, ClassifyArgs, Cli, ClusterArgs, Command, EnvelopeArgs,
    Model, ModelArgs, PhArgs, SimulateArgs, StatisticArg, TieBreakArg, TwoSampleArgs,
};


pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Ph(a) => ph(a),
        Command::Apf(a) => apf(a),
        Command::Envelope(a) => envelope(a),
        Command::Boxplot(a) => boxplot(a),
        Command::CiMean(a) => ci_mean(a),
        Command::TwoSample(a) => two_sample_cmd(a),
        Command::Cluster(a) => cluster(a),
        Command::Classify(a) => classify_cmd(a),
    }
}

/// Full invocation as a JSON value for embedding in artifacts. The worker
/// thread count stays out on purpose: it is an execution detail and outputs
/// must be byte-identical across worker counts.
fn config_value(name: &str, args: &impl Serialize) -> serde_json::Value {
    let mut v = serde_json::to_value(args).expect("config serialization");
    let obj = v.as_object_mut().expect("config is an object");
    obj.insert("command".into(), name.into());
    v
}

fn config_comment(config: &serde_json::Value) -> String {
    format!("config: {config}")
}

fn parse_window_1d(s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let err = || CliError::Usage(format!("bad window '{s}': expected \"T1:T2\" with T1 < T2"));
    if parts.len() != 2 {
        return Err(err());
    }
    let t1: f64 = parts[0].trim().parse().map_err(|_| err())?;
    let t2: f64 = parts[1].trim().parse().map_err(|_| err())?;
    if t1.is_nan() || t2.is_nan() || t1 >= t2 {
        return Err(err());
    }
    Ok((t1, t2))
}

fn parse_window_2d(s: &str) -> Result<Window, CliError> {
    let err = || {
        CliError::Usage(format!(
            "bad simulation window '{s}': expected \"x0:x1,y0:y1\""
        ))
    };
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(err());
    }
    let (x0, x1) = parse_window_1d(parts[0]).map_err(|_| err())?;
    let (y0, y1) = parse_window_1d(parts[1]).map_err(|_| err())?;
    Ok(Window::new(x0, x1, y0, y1))
}

fn parse_circles(s: &str) -> Result<Vec<CircleSpec>, CliError> {
    let err =
        |part: &str| CliError::Usage(format!("bad circle '{part}': expected \"cx,cy,r\""));
    s.split(';')
        .map(|part| {
            let f: Vec<&str> = part.split(',').map(str::trim).collect();
            if f.len() != 3 {
                return Err(err(part));
            }
            let cx: f64 = f[0].parse().map_err(|_| err(part))?;
            let cy: f64 = f[1].parse().map_err(|_| err(part))?;
            let r: f64 = f[2].parse().map_err(|_| err(part))?;
            if r <= 0.0 {
                return Err(err(part));
            }
            Ok(CircleSpec::new(cx, cy, r))
        })
        .collect()
}

impl ModelArgs {
    fn need<T: Copy>(&self, v: Option<T>, flag: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Usage(format!("model requires --{flag}")))
    }

    fn sample(&self, seed: u64) -> Result<Vec<Point2>, CliError> {
        let window = parse_window_2d(&self.sim_window)?;
        Ok(match self.model {
            Model::Csr => poisson(self.need(self.rho, "rho")?, &window, seed),
            Model::Cells => baddeley_silverman(&window, seed),
            Model::MaternCluster => matern_cluster(
                self.need(self.kappa, "kappa")?,
                self.need(self.cluster_radius, "cluster-radius")?,
                self.need(self.mu, "mu")?,
                &window,
                seed,
            ),
            Model::Hardcore => matern_hardcore(
                self.need(self.beta, "beta")?,
                self.need(self.hardcore_dist, "hardcore-dist")?,
                &window,
                seed,
            ),
            Model::Circles => {
                let spec = self.circles.as_deref().ok_or_else(|| {
                    CliError::Usage("model requires --circles".into())
                })?;
                sample_on_circles(
                    self.need(self.n, "n")?,
                    &parse_circles(spec)?,
                    self.sigma,
                    seed,
                )
            }
        })
    }
}

fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let config = config_value("simulate", args);
    let points = args.model.sample(args.seed)?;
    io::write_points(&args.out, &config_comment(&config), &points)
}

fn ph(args: &PhArgs) -> Result<(), CliError> {
    if args.k > 1 {
        return Err(CliError::Usage(format!(
            "homology dimension {} is not supported (use 0 or 1)",
            args.k
        )));
    }
    let tiebreak = match args.tiebreak {
        TieBreakArg::Deterministic => TieBreak::Deterministic,
        TieBreakArg::Seeded => TieBreak::Seeded(args.seed),
    };
    let config = config_value("ph", args);
    let dgm = match (&args.points, &args.graph) {
        (Some(points_path), None) => {
            let points = io::parse_points(points_path)?;
            let tri = apf_core::geometry::delaunay(&points)?;
            let filtration = apf_core::geometry::alpha_filtration(&tri);
            apf_core::persistence::ph_pointcloud(&filtration, args.k, tiebreak)
        }
        (None, Some(graph_path)) => {
            if args.k != 0 {
                return Err(CliError::Usage(
                    "sub-level persistence of a height graph is dimension 0 only".into(),
                ));
            }
            let graph = io::parse_heightgraph(graph_path)?;
            ph_sublevel(&graph, tiebreak)
        }
        _ => return Err(CliError::Usage("provide exactly one of --points or --graph".into())),
    };
    io::write_diagram(&args.out, &config, &dgm)
}

fn apf(args: &ApfArgs) -> Result<(), CliError> {
    let (t1, t2) = parse_window_1d(&args.window)?;
    if args.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    let config = config_value("apf", args);
    let dgm = io::parse_diagram(&args.diagram)?;
    let truncation = match args.truncate {
        Some(t) if t <= 0.0 => {
            return Err(CliError::Usage("--truncate must be positive".into()))
        }
        Some(t) => Truncation::AllocatedTime(t),
        None => Truncation::None,
    };
    let curve = discretize(&apf_from_rrpd(&to_rrpd(&dgm), truncation), t1, t2, args.grid);
    io::write_curves(&args.out, &config_comment(&config), &["value"], &[&curve])
}

fn parse_dims(s: &str) -> Result<Vec<usize>, CliError> {
    let dims: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse::<usize>()).collect();
    match dims {
        Ok(d) if !d.is_empty() && d.iter().all(|&k| k <= 1) => Ok(d),
        _ => Err(CliError::Usage(format!(
            "bad --k '{s}': expected \"0\", \"1\", or \"0,1\""
        ))),
    }
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage("--alpha must be strictly between 0 and 1".into()))
    }
}

fn envelope(args: &EnvelopeArgs) -> Result<(), CliError> {
    let dims = parse_dims(&args.k)?;
    let (t1, t2) = parse_window_1d(&args.window)?;
    check_alpha(args.alpha)?;
    if args.r < 2 {
        return Err(CliError::Usage("--r must be at least 2".into()));
    }
    let config = config_value("envelope", args);

    let observed_points = io::parse_points(&args.observed)?;
    let curves_of = |points: &[Point2]| -> Result<Vec<CurveSample>, CliError> {
        dims.iter()
            .map(|&k| {
                apf_curve(points, k, Truncation::None, t1, t2, args.grid).map_err(CliError::from)
            })
            .collect()
    };
    let observed = curves_of(&observed_points)?;
    // One derived stream per null replicate: reproducible at any parallelism.
    let simulated: Vec<Vec<CurveSample>> = (0..args.r)
        .into_par_iter()
        .map(|i| {
            let pts = args.null.sample(seeds::derived(args.seed, i as u64))?;
            curves_of(&pts)
        })
        .collect::<Result<_, _>>()?;

    let result: EnvelopeResult = if dims.len() == 1 {
        let sims: Vec<CurveSample> = simulated.iter().map(|c| c[0].clone()).collect();
        rank_envelope_test(&observed[0], &sims, args.alpha)?
    } else {
        let statistics: Vec<(CurveSample, Vec<CurveSample>)> = dims
            .iter()
            .enumerate()
            .map(|(j, _)| {
                (observed[j].clone(), simulated.iter().map(|c| c[j].clone()).collect())
            })
            .collect();
        combine_envelopes(&statistics, args.alpha)?
    };

    // Per-dimension band slices on the real window for plotting.
    for (j, &k) in dims.iter().enumerate() {
        let slice = |c: &CurveSample| CurveSample {
            t1,
            t2,
            values: c.values[j * args.grid..(j + 1) * args.grid].to_vec(),
        };
        let (lower, upper) = if dims.len() == 1 {
            (result.lower.clone(), result.upper.clone())
        } else {
            (slice(&result.lower), slice(&result.upper))
        };
        let band_path = PathBuf::from(format!("{}_band_k{k}.csv", args.out_prefix));
        io::write_curves(
            &band_path,
            &config_comment(&config),
            &["lower", "upper", "observed"],
            &[&lower, &upper, &observed[j]],
        )?;
        let svg_path = PathBuf::from(format!("{}_envelope_k{k}.svg", args.out_prefix));
        svg::plot(
            &svg_path,
            &format!("rank envelope, dimension {k}"),
            &config_comment(&config),
            &[svg::Band { lower: &lower, upper: &upper, fill: "#c8d8f0" }],
            &[svg::Series { curve: &observed[j], stroke: "#c02020", width: 1.6, dashed: false }],
        )?;
    }

    io::write_json(
        Path::new(&format!("{}_decision.json", args.out_prefix)),
        &serde_json::json!({
            "config": config,
            "dims": dims,
            "l_alpha": result.l_alpha,
            "no_valid_l": result.no_valid_l,
            "statistic": result.statistic,
            "reject": result.reject,
            "decision": if result.reject { "reject" } else { "accept" },
            "ranks": result.ranks,
        }),
    )
}

fn boxplot(args: &BoxplotArgs) -> Result<(), CliError> {
    if args.inflation.is_nan() || args.inflation < 0.0 {
        return Err(CliError::Usage("--inflation must be nonnegative".into()));
    }
    let config = config_value("boxplot", args);
    let curves = io::parse_curve_set(&args.curves)?;
    let res = functional_boxplot(&curves, args.inflation)?;
    io::write_curves(
        &PathBuf::from(format!("{}_bands.csv", args.out_prefix)),
        &config_comment(&config),
        &["central_lower", "central_upper", "fence_lower", "fence_upper", "deepest"],
        &[
            &res.central_lower,
            &res.central_upper,
            &res.fence_lower,
            &res.fence_upper,
            &curves[res.central_index],
        ],
    )?;
    let mut series: Vec<svg::Series> = res
        .outlier_indices
        .iter()
        .map(|&i| svg::Series { curve: &curves[i], stroke: "#c02020", width: 1.0, dashed: true })
        .collect();
    series.push(svg::Series {
        curve: &curves[res.central_index],
        stroke: "#101010",
        width: 1.8,
        dashed: false,
    });
    svg::plot(
        &PathBuf::from(format!("{}_boxplot.svg", args.out_prefix)),
        "functional boxplot",
        &config_comment(&config),
        &[
            svg::Band { lower: &res.fence_lower, upper: &res.fence_upper, fill: "#e4ecf7" },
            svg::Band { lower: &res.central_lower, upper: &res.central_upper, fill: "#b4c8e8" },
        ],
        &series,
    )?;
    io::write_json(
        &PathBuf::from(format!("{}_boxplot.json", args.out_prefix)),
        &serde_json::json!({
            "config": config,
            "depths": res.depths,
            "central_index": res.central_index,
            "outliers": res.outlier_indices,
        }),
    )
}

fn ci_mean(args: &CiMeanArgs) -> Result<(), CliError> {
    check_alpha(args.alpha)?;
    if args.b < 1 {
        return Err(CliError::Usage("--B must be at least 1".into()));
    }
    let config = config_value("ci-mean", args);
    let curves = io::parse_curve_set(&args.curves)?;
    let band = mean_band(&curves, args.alpha, args.b, args.seed)?;
    if !band.half_width.is_finite() {
        return Err(CliError::Numeric("bootstrap band width is not finite".into()));
    }
    io::write_curves(
        &PathBuf::from(format!("{}_band.csv", args.out_prefix)),
        &config_comment(&config),
        &["mean", "lower", "upper"],
        &[&band.mean, &band.lower, &band.upper],
    )?;
    svg::plot(
        &PathBuf::from(format!("{}_ci.svg", args.out_prefix)),
        "mean curve with bootstrap confidence band",
        &config_comment(&config),
        &[svg::Band { lower: &band.lower, upper: &band.upper, fill: "#c8d8f0" }],
        &[svg::Series { curve: &band.mean, stroke: "#101010", width: 1.8, dashed: false }],
    )?;
    io::write_json(
        &PathBuf::from(format!("{}_ci.json", args.out_prefix)),
        &serde_json::json!({
            "config": config,
            "r": curves.len(),
            "half_width": band.half_width,
        }),
    )
}

fn two_sample_cmd(args: &TwoSampleArgs) -> Result<(), CliError> {
    check_alpha(args.alpha)?;
    if args.b < 1 {
        return Err(CliError::Usage("--B must be at least 1".into()));
    }
    let config = config_value("two-sample", args);
    let group_a = io::parse_curve_set(&args.group_a)?;
    let group_b = io::parse_curve_set(&args.group_b)?;
    let interval = match &args.interval {
        Some(s) => parse_window_1d(s)?,
        None => (group_a[0].t1, group_a[0].t2),
    };
    let stat = match args.statistic {
        StatisticArg::Ks => TwoSampleStat::Ks,
        StatisticArg::L1 => TwoSampleStat::L1,
    };
    let res =
        two_sample(&group_a, &group_b, stat, args.alpha, args.b, args.seed, interval)?;
    if !res.statistic.is_finite() || !res.q_hat.is_finite() {
        return Err(CliError::Numeric("two-sample statistic is not finite".into()));
    }
    let mean_a = CurveSample::mean(&group_a)?;
    let mean_b = CurveSample::mean(&group_b)?;
    io::write_curves(
        &PathBuf::from(format!("{}_means.csv", args.out_prefix)),
        &config_comment(&config),
        &["mean_a", "mean_b"],
        &[&mean_a, &mean_b],
    )?;
    svg::plot(
        &PathBuf::from(format!("{}_test.svg", args.out_prefix)),
        "group mean curves",
        &config_comment(&config),
        &[],
        &[
            svg::Series { curve: &mean_a, stroke: "#1040c0", width: 1.8, dashed: false },
            svg::Series { curve: &mean_b, stroke: "#c02020", width: 1.8, dashed: false },
        ],
    )?;
    io::write_json(
        &PathBuf::from(format!("{}_test.json", args.out_prefix)),
        &serde_json::json!({
            "config": config,
            "statistic": res.statistic,
            "q_hat": res.q_hat,
            "p_hat": res.p_hat,
            "reject": res.reject,
            "decision": if res.reject { "reject" } else { "accept" },
        }),
    )
}

fn cluster(args: &ClusterArgs) -> Result<(), CliError> {
    let config = config_value("cluster", args);
    let curves = io::parse_curve_set(&args.curves)?;
    let labels = kmeans_curves(&curves, args.clusters, args.seed, args.max_iter)?;
    io::write_json(
        &args.out,
        &serde_json::json!({ "config": config, "labels": labels }),
    )
}

fn classify_cmd(args: &ClassifyArgs) -> Result<(), CliError> {
    if !(0.0..1.0).contains(&args.alpha) {
        return Err(CliError::Usage("--alpha must be in [0, 1)".into()));
    }
    let config = config_value("classify", args);
    let query = io::parse_curve(&args.query)?;
    let groups: Vec<Vec<CurveSample>> = args
        .groups
        .iter()
        .map(|spec| {
            let paths: Vec<PathBuf> = spec.split(',').map(PathBuf::from).collect();
            io::parse_curve_set(&paths)
        })
        .collect::<Result<_, _>>()?;
    let all: Vec<CurveSample> = groups
        .iter()
        .flatten()
        .chain(std::iter::once(&query))
        .cloned()
        .collect();
    CurveSample::common_grid(&all)?;
    let group = classify(&query, &groups, args.alpha)?;
    io::write_json(&args.out, &serde_json::json!({ "config": config, "group": group }))
}

//! One function per subcommand. Each returns the JSON document to print and
//! whether a property violation was found (exit code 1).

use lipgeo::geodesic::{self, GeodesicProblem};
use lipgeo::holder::{self, FitOptions};
use lipgeo::metrics::{self, MetricSpace};
use lipgeo::norms;
use lipgeo::reparam;
use lipgeo::{CheckOptions, CheckReport, Metric, Vector};
use serde::Serialize;

use crate::curve_file::CurveFile;
use crate::error::{CliError, Result};
use crate::metric_arg::{parse_metric, parse_norm};

#[derive(Debug)]
pub struct Outcome {
    pub json: String,
    pub violation: bool,
}

impl Outcome {
    fn ok<T: Serialize>(value: &T) -> Result<Self> {
        Self::new(value, false)
    }

    fn new<T: Serialize>(value: &T, violation: bool) -> Result<Self> {
        let json = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Parse(format!("serializing output: {e}")))?;
        Ok(Self { json, violation })
    }
}

#[derive(Serialize)]
struct LengthReport {
    length: f64,
    lipschitz_estimate: f64,
    interval: [f64; 2],
}

pub fn length(curve: &CurveFile, metric: &str) -> Result<Outcome> {
    let metric = parse_metric(metric)?;
    let c = curve.to_polyline()?;
    let length = c.length(&metric)?;
    // A single sample has estimate 0 by convention.
    let lipschitz_estimate = if c.len() < 2 {
        0.0
    } else {
        c.lipschitz_estimate(&metric)?
    };
    let (a, b) = c.interval();
    Outcome::ok(&LengthReport {
        length,
        lipschitz_estimate,
        interval: [a, b],
    })
}

#[derive(Serialize)]
struct GeodesicReport {
    converged: bool,
    k: f64,
    lower_bound: f64,
    iterations: usize,
    path: CurveFile,
}

pub struct GeodesicArgs<'a> {
    pub start: &'a [f64],
    pub end: &'a [f64],
    pub metric: &'a str,
    pub segments: usize,
    pub tol: f64,
    pub max_iters: usize,
}

pub fn geodesic(args: &GeodesicArgs<'_>) -> Result<Outcome> {
    let metric = parse_metric(args.metric)?;
    let start = point("--start", args.start)?;
    let end = point("--end", args.end)?;
    if start.dim() != end.dim() {
        return Err(CliError::Mismatch(format!(
            "--start has {} coordinates but --end has {}",
            start.dim(),
            end.dim()
        )));
    }
    let prob = GeodesicProblem::new(metric, start, end, args.segments)?
        .with_tolerance(args.tol)
        .with_max_iters(args.max_iters);
    let res = geodesic::solve(&prob)?;
    Outcome::ok(&GeodesicReport {
        converged: res.converged,
        k: res.k,
        lower_bound: prob.lower_bound(),
        iterations: res.iterations,
        path: CurveFile::from_polyline(&res.path),
    })
}

fn point(flag: &str, coords: &[f64]) -> Result<Vector> {
    Vector::new(coords.to_vec()).map_err(|e| CliError::Parse(format!("{flag}: {e}")))
}

pub fn reparam(curve: &CurveFile, norm: &str, speed_floor: f64) -> Result<Outcome> {
    let norm = parse_norm(norm)?;
    let c = curve.to_c1()?;
    let q = reparam::unit_speed_reparam(&c, &norm, speed_floor)?;
    Outcome::ok(&CurveFile::from_polyline(&q))
}

pub fn holder(
    domain: &CurveFile,
    range: &CurveFile,
    d1: &str,
    d2: &str,
    alpha: Option<f64>,
    seed: u64,
) -> Result<Outcome> {
    let d1 = parse_metric(d1)?;
    let d2 = parse_metric(d2)?;
    let dom = domain.to_polyline()?;
    let ran = range.to_polyline()?;
    if dom.len() != ran.len() {
        return Err(CliError::Mismatch(format!(
            "domain has {} samples but range has {}",
            dom.len(),
            ran.len()
        )));
    }
    let opts = match alpha {
        Some(a) => FitOptions::fixed(a),
        None => FitOptions::fit(),
    }
    .with_seed(seed);
    let fit = holder::fit_holder(dom.points(), ran.points(), &d1, &d2, opts)?;
    Outcome::new(&fit, !fit.holder)
}

#[derive(Serialize)]
struct Suite {
    name: &'static str,
    passed: bool,
    #[serde(flatten)]
    report: CheckReport,
}

#[derive(Serialize)]
struct CheckOutput {
    metric: String,
    dim: usize,
    samples: usize,
    seed: u64,
    passed: bool,
    suites: Vec<Suite>,
}

pub fn check(metric: &str, dim: usize, samples: usize, seed: u64) -> Result<Outcome> {
    let parsed = parse_metric(metric)?;
    if samples == 0 {
        return Err(CliError::Parse("--samples must be at least 1".into()));
    }
    let opts = CheckOptions::new(samples, seed);
    let norm = parsed.base_norm();
    let suites = [
        ("norm_axioms", norms::check_norm_axioms(norm, dim, opts)?),
        (
            "unit_ball_convexity",
            norms::check_unit_ball_convexity(norm, dim, opts)?,
        ),
        (
            "metric_axioms",
            metrics::check_metric_axioms(&parsed, dim, opts)?,
        ),
    ];
    let suites: Vec<Suite> = suites
        .into_iter()
        .map(|(name, report)| Suite {
            name,
            passed: report.passed(),
            report,
        })
        .collect();
    let passed = suites.iter().all(|s| s.passed);
    Outcome::new(
        &CheckOutput {
            metric: metric.to_string(),
            dim,
            samples,
            seed,
            passed,
            suites,
        },
        !passed,
    )
}

#[derive(Serialize)]
struct CoverReport {
    alpha: f64,
    sums: Vec<CoverEntry>,
}

#[derive(Serialize)]
struct CoverEntry {
    scale: usize,
    sum: f64,
}

pub fn cover(curve: &CurveFile, metric: &str, alpha: f64, scales: &[usize]) -> Result<Outcome> {
    let metric = parse_metric(metric)?;
    let c = curve.to_polyline()?;
    metric.check_dim(c.dim())?;
    let sums = holder::hausdorff_covering_sum(&c, &metric, alpha, scales)?;
    Outcome::ok(&CoverReport {
        alpha,
        sums: sums
            .into_iter()
            .map(|(scale, sum)| CoverEntry { scale, sum })
            .collect(),
    })
}

pub fn koch(level: u32) -> Result<Outcome> {
    let c = holder::koch_generator(level)?;
    Outcome::ok(&CurveFile::from_polyline(&c))
}

/// Distance between two points, mostly for scripting.
pub fn distance(metric: &str, x: &[f64], y: &[f64]) -> Result<Outcome> {
    let m: Metric = parse_metric(metric)?;
    let d = m.distance(&point("x", x)?, &point("y", y)?)?;
    Outcome::ok(&serde_json::json!({ "distance": d }))
}

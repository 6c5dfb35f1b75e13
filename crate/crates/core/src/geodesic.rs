//! Discrete paths of minimal Lipschitz constant between fixed endpoints.
//!
//! A path is a polyline on the uniform grid `t_i = i / S` of `[0, 1]`. Its
//! Lipschitz constant on that grid is `k = S · max_i d(p_i, p_{i+1})`, and no
//! path between `x` and `y` can do better than `k = d(x, y)`.
//!
//! [`solve`] starts from the affine interpolant and relaxes interior points
//! one at a time (Gauss–Seidel order): each point moves to a candidate that
//! strictly lowers `max(d(p_{i-1}, m), d(m, p_{i+1}))`. Candidates come from a
//! golden-section line search toward the chord midpoint of the two neighbours
//! and from coordinate steps whose radius halves whenever a sweep accepts none
//! of them. Only distance evaluations are used, so snowflaked metrics work as
//! well as norms.

use serde::Serialize;

use crate::curves::{uniform_grid, Polyline};
use crate::error::{Error, Result};
use crate::metrics::{Metric, MetricSpace};
use crate::norms::{check_dims, lerp_coords, Vector};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITERS: usize = 10_000;

// Relative gain a candidate must beat to replace the incumbent; keeps
// roundoff from shuffling points around flat optima.
const ACCEPT_MARGIN: f64 = 1e-14;
const GOLDEN_ITERS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicProblem {
    pub metric: Metric,
    pub start: Vector,
    pub end: Vector,
    pub segment_count: usize,
    pub tolerance: f64,
    pub max_iters: usize,
}

impl GeodesicProblem {
    pub fn new(metric: Metric, start: Vector, end: Vector, segment_count: usize) -> Result<Self> {
        let prob = Self {
            metric,
            start,
            end,
            segment_count,
            tolerance: DEFAULT_TOLERANCE,
            max_iters: DEFAULT_MAX_ITERS,
        };
        prob.validate()?;
        Ok(prob)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_dims(self.start.dim(), self.end.dim())?;
        self.metric.check_dim(self.start.dim())?;
        if self.segment_count == 0 {
            return Err(Error::InvalidArgument(
                "segment_count must be at least 1".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument(
                "max_iters must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// `d(start, end)`, the lower bound for every path's `k`.
    pub fn lower_bound(&self) -> f64 {
        self.metric.dist(self.start.as_slice(), self.end.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveTrace {
    /// `k` before the first sweep and after each sweep; nonincreasing.
    pub k_history: Vec<f64>,
    /// Largest single-point move (in the base norm) in each sweep.
    pub max_moves: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicResult {
    pub path: Polyline,
    pub k: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: SolveTrace,
}

/// Solves from the affine interpolant between the endpoints.
pub fn solve(prob: &GeodesicProblem) -> Result<GeodesicResult> {
    prob.validate()?;
    let s = prob.segment_count;
    let init = uniform_grid(s + 1)
        .into_iter()
        .map(|t| lerp_coords(prob.start.as_slice(), prob.end.as_slice(), t))
        .collect();
    relax(prob, init)
}

/// Solves from caller-supplied interior points (`segment_count - 1` of them);
/// the endpoints are taken from the problem.
pub fn solve_from(prob: &GeodesicProblem, interior: &[Vector]) -> Result<GeodesicResult> {
    prob.validate()?;
    let s = prob.segment_count;
    if interior.len() + 1 != s {
        return Err(Error::InvalidArgument(format!(
            "expected {} interior points, got {}",
            s - 1,
            interior.len()
        )));
    }
    let mut init = Vec::with_capacity(s + 1);
    init.push(prob.start.as_slice().to_vec());
    for p in interior {
        check_dims(prob.start.dim(), p.dim())?;
        init.push(p.as_slice().to_vec());
    }
    init.push(prob.end.as_slice().to_vec());
    relax(prob, init)
}

fn path_k(m: &Metric, pts: &[Vec<f64>]) -> f64 {
    let s = (pts.len() - 1) as f64;
    pts.windows(2)
        .map(|w| m.dist(&w[0], &w[1]))
        .fold(0.0, f64::max)
        * s
}

fn relax(prob: &GeodesicProblem, mut pts: Vec<Vec<f64>>) -> Result<GeodesicResult> {
    let m = &prob.metric;
    let norm = m.base_norm();
    let dim = prob.start.dim();
    let s = prob.segment_count;

    let mut k = path_k(m, &pts);
    let mut trace = SolveTrace {
        k_history: vec![k],
        max_moves: Vec::new(),
    };
    // Coordinate scale for step radii and the displacement test.
    let scale = pts
        .iter()
        .flat_map(|p| pts[0].iter().zip(p).map(|(a, b)| (a - b).abs()))
        .fold(
            norm.fold_diff(prob.start.as_slice(), prob.end.as_slice()),
            f64::max,
        );

    let mut converged = false;
    let mut iterations = 0;
    if k == 0.0 || s == 1 {
        converged = true;
    } else {
        let mut radius = scale / s as f64;
        while iterations < prob.max_iters {
            iterations += 1;
            let mut max_move: f64 = 0.0;
            let mut stepped = false;
            for i in 1..s {
                let (before, rest) = pts.split_at_mut(i);
                let prev = &before[i - 1];
                let (cur, after) = rest.split_first_mut().expect("interior index");
                let next = &after[0];
                let local = |z: &[f64]| m.dist(prev, z).max(m.dist(z, next));

                let incumbent = local(cur);
                let mut best = cur.clone();
                let mut best_val = incumbent;

                let mid = lerp_coords(prev, next, 0.5);
                if let Some((cand, val)) = line_search(&local, cur, &mid) {
                    if val < best_val * (1.0 - ACCEPT_MARGIN) {
                        best = cand;
                        best_val = val;
                    }
                }
                let mut coord_best: Option<(Vec<f64>, f64)> = None;
                for j in 0..dim {
                    for sign in [1.0, -1.0] {
                        let mut cand = best.clone();
                        cand[j] += sign * radius;
                        let val = local(&cand);
                        let bar = coord_best.as_ref().map_or(best_val, |c| c.1);
                        if val < bar * (1.0 - ACCEPT_MARGIN) {
                            coord_best = Some((cand, val));
                        }
                    }
                }
                if let Some((cand, val)) = coord_best {
                    best = cand;
                    best_val = val;
                    stepped = true;
                }

                if best_val < incumbent {
                    max_move = max_move.max(norm.fold_diff(cur, &best));
                    *cur = best;
                }
            }
            if !stepped {
                radius *= 0.5;
            }

            let k_new = path_k(m, &pts);
            trace.k_history.push(k_new);
            trace.max_moves.push(max_move);
            let improvement = (k - k_new) / k.max(f64::MIN_POSITIVE);
            k = k_new;
            if improvement < prob.tolerance && max_move <= prob.tolerance * scale {
                converged = true;
                break;
            }
        }
    }

    let points = pts
        .into_iter()
        .map(Vector::new)
        .collect::<Result<Vec<_>>>()?;
    let path = Polyline::new(uniform_grid(s + 1), points)?;
    Ok(GeodesicResult {
        path,
        k,
        iterations,
        converged,
        trace,
    })
}

// Golden-section search for the minimum of `f(cur + s (target - cur))` over
// `s ∈ [0, 2]`. The objective is a maximum of two quasiconvex functions along
// a line, hence unimodal.
fn line_search<F>(f: &F, cur: &[f64], target: &[f64]) -> Option<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    if cur == target {
        return None;
    }
    let at = |s: f64| lerp_coords(cur, target, s);
    let g = |s: f64| f(&at(s));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0, 2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    for _ in 0..GOLDEN_ITERS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = g(d);
        }
    }
    // The chord midpoint itself is the exact answer for strictly convex
    // norms; offer it alongside the bracketed estimate.
    let mut best = (1.0, g(1.0));
    for s in [0.5 * (a + b), c, d] {
        let v = g(s);
        if v < best.1 {
            best = (s, v);
        }
    }
    Some((at(best.0), best.1))
}

/// True iff every interior sample is metrically between the endpoints:
/// `d(start, p_i) + d(p_i, end) <= d(start, end) + tol`.
pub fn straightness_check<M: MetricSpace>(path: &Polyline, m: &M, tol: f64) -> Result<bool> {
    if path.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            found: path.len(),
        });
    }
    m.check_dim(path.dim())?;
    let a = path.start().as_slice();
    let b = path.end().as_slice();
    let dab = m.dist(a, b);
    Ok(path.points()[1..path.len() - 1]
        .iter()
        .all(|p| m.dist(a, p.as_slice()) + m.dist(p.as_slice(), b) <= dab + tol))
}

/// The graph curve `Φ(t) = (t, φ(t))` for `φ` sampled on the uniform grid of
/// `[0, 1]`. Requires `φ(0) = φ(1) = 0` and secant slopes of magnitude at most
/// 1, which makes `Φ` 1-Lipschitz into `(R², l^∞)` from `(0, 0)` to `(1, 0)`.
pub fn linfty_geodesic_family(phi_samples: &[f64]) -> Result<Polyline> {
    let n = phi_samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: n,
        });
    }
    if phi_samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("phi samples"));
    }
    if phi_samples[0] != 0.0 || phi_samples[n - 1] != 0.0 {
        return Err(Error::InvalidArgument(
            "phi must vanish at both ends".into(),
        ));
    }
    let params = uniform_grid(n);
    for (j, (w, t)) in phi_samples.windows(2).zip(params.windows(2)).enumerate() {
        let slope = (w[1] - w[0]).abs() / (t[1] - t[0]);
        if slope > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "phi has secant slope {slope} > 1 between samples {j} and {}",
                j + 1
            )));
        }
    }
    let points = params
        .iter()
        .zip(phi_samples)
        .map(|(&t, &v)| Vector::new(vec![t, v]))
        .collect::<Result<Vec<_>>>()?;
    Polyline::new(params, points)
}

/// Axis-by-axis path from `start` to `end`, with parameter time on `[0, 1]`
/// proportional to `l^1` distance travelled. Each axis leg is split into
/// `steps_per_axis` samples. Under `l^1` its Lipschitz constant is exactly
/// `d_1(start, end)`.
pub fn coordinate_staircase(
    start: &Vector,
    end: &Vector,
    steps_per_axis: usize,
) -> Result<Polyline> {
    check_dims(start.dim(), end.dim())?;
    if steps_per_axis == 0 {
        return Err(Error::InvalidArgument(
            "steps_per_axis must be at least 1".into(),
        ));
    }
    let a = start.as_slice();
    let b = end.as_slice();
    let total: f64 = a.iter().zip(b).map(|(x, y)| (y - x).abs()).sum();
    if total == 0.0 {
        return Polyline::new(vec![0.0], vec![start.clone()]);
    }
    let mut params = vec![0.0];
    let mut points = vec![start.clone()];
    let mut cur = a.to_vec();
    let mut travelled = 0.0;
    for j in 0..a.len() {
        let delta = b[j] - a[j];
        if delta == 0.0 {
            continue;
        }
        for step in 1..=steps_per_axis {
            cur[j] = if step == steps_per_axis {
                b[j]
            } else {
                a[j] + delta * step as f64 / steps_per_axis as f64
            };
            let done = travelled + delta.abs() * step as f64 / steps_per_axis as f64;
            params.push(done / total);
            points.push(Vector::new(cur.clone())?);
        }
        travelled += delta.abs();
    }
    *params.last_mut().expect("nonempty") = 1.0;
    Polyline::new(params, points)
}

//! Lipschitz and Hölder bounds: constant arithmetic, empirical fitting,
//! order-above-one collapse, covering sums and a Koch curve fixture.

use rand::Rng;
use serde::Serialize;

use crate::curves::{uniform_grid, Polyline};
use crate::error::{Error, Result};
use crate::metrics::MetricSpace;
use crate::norms::{check_dims, Vector};
use crate::sampling;

/// `d_2(f(x), f(y)) <= constant · d_1(x, y)^order`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LipBound {
    constant: f64,
    order: f64,
}

impl LipBound {
    pub fn new(constant: f64, order: f64) -> Result<Self> {
        if !(constant >= 0.0 && constant.is_finite()) {
            return Err(Error::InvalidConstant(constant));
        }
        if !(order > 0.0 && order.is_finite()) {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self { constant, order })
    }

    /// An order-1 (Lipschitz) bound.
    pub fn lipschitz(constant: f64) -> Result<Self> {
        Self::new(constant, 1.0)
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn order(&self) -> f64 {
        self.order
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LipOp {
    /// `f + g`.
    Sum,
    /// `a · f`.
    Scale(f64),
    /// `f · g` for real-valued `f`, `g` with `sup |f| <= sup1`,
    /// `sup |g| <= sup2`.
    Product {
        sup1: Option<f64>,
        sup2: Option<f64>,
    },
    /// `f ∘ g`, where `f` carries the first bound and `g` the second.
    Compose,
}

/// Bound for a combination of maps with known bounds.
///
/// - sum: `(C_1 + C_2, α)`
/// - scale: `(|a| C, α)`
/// - product: `(C_1 sup2 + C_2 sup1, α)`
/// - compose `f ∘ g`: `(C_f · C_g^{α_f}, α_f α_g)`
pub fn lip_calculus(op: LipOp, first: LipBound, second: Option<LipBound>) -> Result<LipBound> {
    match op {
        LipOp::Scale(a) => {
            if !a.is_finite() {
                return Err(Error::NonFinite("scale factor"));
            }
            LipBound::new(a.abs() * first.constant, first.order)
        }
        LipOp::Sum => {
            let second = second.ok_or(Error::MissingOperand)?;
            same_order(first, second)?;
            LipBound::new(first.constant + second.constant, first.order)
        }
        LipOp::Product { sup1, sup2 } => {
            let second = second.ok_or(Error::MissingOperand)?;
            same_order(first, second)?;
            let (s1, s2) = match (sup1, sup2) {
                (Some(a), Some(b)) if a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0 => {
                    (a, b)
                }
                _ => return Err(Error::MissingSupBound),
            };
            LipBound::new(first.constant * s2 + second.constant * s1, first.order)
        }
        LipOp::Compose => {
            let inner = second.ok_or(Error::MissingOperand)?;
            LipBound::new(
                first.constant * inner.constant.powf(first.order),
                first.order * inner.order,
            )
        }
    }
}

fn same_order(a: LipBound, b: LipBound) -> Result<()> {
    if a.order == b.order {
        Ok(())
    } else {
        Err(Error::OrderMismatch(a.order, b.order))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FitMode {
    FixedAlpha(f64),
    FitAlpha,
}

/// Result of fitting `d_2 <= C d_1^α` to sampled pairs.
///
/// `constant` is the tight pairwise maximum at `alpha`, attained by
/// `witness`. A pair of coincident domain points with distinct images makes
/// the data non-Hölder: `holder` is then false, `constant` is infinite and
/// `witness` names the offending pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderFit {
    pub constant: f64,
    pub alpha: f64,
    /// RMS of log-space residuals: of the regression line in fit mode, of
    /// `log d_2 - α log d_1 - log C` in fixed mode.
    pub residual: f64,
    pub witness: (usize, usize),
    pub holder: bool,
    /// Pairs entering the regression (fit mode) or the maximum.
    pub pairs_used: usize,
}

/// Pair count above which [`fit_holder`] regresses on a seeded uniform
/// subsample of pairs.
pub const REGRESSION_PAIR_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub mode: FitMode,
    pub seed: u64,
    pub pair_limit: usize,
}

impl FitOptions {
    pub fn fixed(alpha: f64) -> Self {
        Self {
            mode: FitMode::FixedAlpha(alpha),
            seed: 0,
            pair_limit: REGRESSION_PAIR_LIMIT,
        }
    }

    pub fn fit() -> Self {
        Self {
            mode: FitMode::FitAlpha,
            seed: 0,
            pair_limit: REGRESSION_PAIR_LIMIT,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn fit_holder<D1, D2>(
    domain: &[Vector],
    range: &[Vector],
    d1: &D1,
    d2: &D2,
    opts: FitOptions,
) -> Result<HolderFit>
where
    D1: MetricSpace,
    D2: MetricSpace,
{
    let n = domain.len();
    if range.len() != n {
        return Err(Error::CurveLengthMismatch {
            params: n,
            points: range.len(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: n,
        });
    }
    for (x, y) in domain.iter().zip(range) {
        check_dims(domain[0].dim(), x.dim())?;
        check_dims(range[0].dim(), y.dim())?;
    }
    d1.check_dim(domain[0].dim())?;
    d2.check_dim(range[0].dim())?;

    let dist1 = |i: usize, j: usize| d1.dist(domain[i].as_slice(), domain[j].as_slice());
    let dist2 = |i: usize, j: usize| d2.dist(range[i].as_slice(), range[j].as_slice());

    // Coincident domain points with distinct images cannot satisfy any bound.
    for i in 0..n {
        for j in i + 1..n {
            if dist1(i, j) == 0.0 && dist2(i, j) > 0.0 {
                return Ok(HolderFit {
                    constant: f64::INFINITY,
                    alpha: match opts.mode {
                        FitMode::FixedAlpha(a) => a,
                        FitMode::FitAlpha => f64::NAN,
                    },
                    residual: f64::NAN,
                    witness: (i, j),
                    holder: false,
                    pairs_used: 0,
                });
            }
        }
    }

    let (alpha, regression_residual, regression_pairs) = match opts.mode {
        FitMode::FixedAlpha(alpha) => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::InvalidOrder(alpha));
            }
            (alpha, None, 0)
        }
        FitMode::FitAlpha => {
            let pairs = regression_pairs(n, opts);
            let samples: Vec<(f64, f64)> = pairs
                .into_iter()
                .filter_map(|(i, j)| {
                    let (a, b) = (dist1(i, j), dist2(i, j));
                    (a > 0.0 && b > 0.0).then(|| (a.ln(), b.ln()))
                })
                .collect();
            let (slope, rms) = least_squares(&samples).ok_or_else(|| {
                Error::InvalidArgument("not enough distinct pairs to fit an exponent".into())
            })?;
            (slope, Some(rms), samples.len())
        }
    };

    let mut constant = 0.0;
    let mut witness = (0, 1);
    let mut pairs_used = 0;
    for i in 0..n {
        for j in i + 1..n {
            let a = dist1(i, j);
            if a == 0.0 {
                continue;
            }
            pairs_used += 1;
            let ratio = dist2(i, j) / a.powf(alpha);
            if ratio > constant {
                constant = ratio;
                witness = (i, j);
            }
        }
    }

    let residual = match regression_residual {
        Some(r) => r,
        None => {
            let log_c = constant.ln();
            let mut sum = 0.0;
            let mut count = 0usize;
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (dist1(i, j), dist2(i, j));
                    if a > 0.0 && b > 0.0 {
                        let r = b.ln() - alpha * a.ln() - log_c;
                        sum += r * r;
                        count += 1;
                    }
                }
            }
            if count == 0 {
                0.0
            } else {
                (sum / count as f64).sqrt()
            }
        }
    };

    Ok(HolderFit {
        constant,
        alpha,
        residual,
        witness,
        holder: true,
        pairs_used: if regression_pairs > 0 {
            regression_pairs
        } else {
            pairs_used
        },
    })
}

fn regression_pairs(n: usize, opts: FitOptions) -> Vec<(usize, usize)> {
    let total = n * (n - 1) / 2;
    if total <= opts.pair_limit {
        let mut out = Vec::with_capacity(total);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j));
            }
        }
        return out;
    }
    let mut rng = sampling::rng(opts.seed);
    let mut out = Vec::with_capacity(opts.pair_limit);
    while out.len() < opts.pair_limit {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i != j {
            out.push((i.min(j), i.max(j)));
        }
    }
    out
}

/// Ordinary least squares `y ≈ slope · x + intercept`; returns the slope and
/// the RMS residual.
fn least_squares(samples: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return None;
    }
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = samples
        .iter()
        .map(|s| (s.1 - slope * s.0 - intercept).powi(2))
        .sum();
    Some((slope, (ss / n).sqrt()))
}

/// Outcome of [`check_order_gt1_constant`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CollapseVerdict {
    /// `max pairwise d_2 <= C h_max^{α-1} L`, with `h_max` the largest gap
    /// and `L` the interval length.
    Collapsed {
        max_distance: f64,
        bound: f64,
    },
    NotCollapsed {
        max_distance: f64,
        bound: f64,
    },
    /// The samples break the claimed `(C, α)` bound at this pair.
    PreconditionViolated {
        i: usize,
        j: usize,
    },
}

impl CollapseVerdict {
    pub fn collapsed(&self) -> bool {
        matches!(self, CollapseVerdict::Collapsed { .. })
    }
}

/// Telescoping test that an order-`α > 1` map of an interval is constant:
/// summing the bound over consecutive samples gives
/// `d_2(p_i, p_j) <= C h_max^{α-1} L`, which tends to zero with the grid.
pub fn check_order_gt1_constant<D2: MetricSpace>(
    domain: &[f64],
    range: &[Vector],
    d2: &D2,
    alpha: f64,
    constant: f64,
) -> Result<CollapseVerdict> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidOrder(alpha));
    }
    if !(constant >= 0.0 && constant.is_finite()) {
        return Err(Error::InvalidConstant(constant));
    }
    let n = domain.len();
    if range.len() != n {
        return Err(Error::CurveLengthMismatch {
            params: n,
            points: range.len(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: n,
        });
    }
    if let Some(i) = domain.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::NotIncreasing(i + 1));
    }
    for y in range {
        check_dims(range[0].dim(), y.dim())?;
    }
    d2.check_dim(range[0].dim())?;

    const REL: f64 = 1e-9;
    let mut max_distance: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let d = d2.dist(range[i].as_slice(), range[j].as_slice());
            let allowed = constant * (domain[j] - domain[i]).powf(alpha);
            if d > allowed * (1.0 + REL) {
                return Ok(CollapseVerdict::PreconditionViolated { i, j });
            }
            max_distance = max_distance.max(d);
        }
    }
    let h_max = domain.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let bound = constant * h_max.powf(alpha - 1.0) * (domain[n - 1] - domain[0]);
    Ok(if max_distance <= bound * (1.0 + REL) {
        CollapseVerdict::Collapsed {
            max_distance,
            bound,
        }
    } else {
        CollapseVerdict::NotCollapsed {
            max_distance,
            bound,
        }
    })
}

/// For each scale `s`, splits the parameter interval into `s` equal closed
/// blocks and returns `Σ_blocks diam(block)^α`, a finite-scale upper proxy
/// for the `α`-dimensional Hausdorff content of the curve's image.
///
/// Samples on a block boundary belong to both neighbouring blocks.
pub fn hausdorff_covering_sum<M: MetricSpace>(
    c: &Polyline,
    m: &M,
    alpha: f64,
    scales: &[usize],
) -> Result<Vec<(usize, f64)>> {
    if scales.is_empty() {
        return Err(Error::EmptyScales);
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidOrder(alpha));
    }
    if let Some(&bad) = scales.iter().find(|&&s| s == 0) {
        return Err(Error::InvalidArgument(format!(
            "scale must be positive, got {bad}"
        )));
    }
    m.check_dim(c.dim())?;
    let (a, b) = c.interval();
    let len = b - a;
    let params = c.params();
    let points = c.points();
    // Boundary snapping tolerance in parameter units.
    let eps = 1e-12 * len.max(f64::MIN_POSITIVE);

    let mut out = Vec::with_capacity(scales.len());
    for &s in scales {
        let mut total = 0.0;
        for block in 0..s {
            let lo = a + len * block as f64 / s as f64;
            let hi = if block + 1 == s {
                b
            } else {
                a + len * (block + 1) as f64 / s as f64
            };
            let first = params.partition_point(|&t| t < lo - eps);
            let last = params.partition_point(|&t| t <= hi + eps);
            let members = &points[first..last];
            total += diameter(members, m).powf(alpha);
        }
        out.push((s, total));
    }
    Ok(out)
}

fn diameter<M: MetricSpace>(points: &[Vector], m: &M) -> f64 {
    let mut best: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(m.dist(p.as_slice(), q.as_slice()));
        }
    }
    best
}

/// Spatial box counting: for each box side `ε`, the number of grid boxes
/// (anchored at the origin) containing at least one sample point.
pub fn box_counts(c: &Polyline, sides: &[f64]) -> Result<Vec<(f64, usize)>> {
    if sides.is_empty() {
        return Err(Error::EmptyScales);
    }
    let mut out = Vec::with_capacity(sides.len());
    for &eps in sides {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "box side must be positive, got {eps}"
            )));
        }
        let mut boxes: Vec<Vec<i64>> = c
            .points()
            .iter()
            .map(|p| {
                p.as_slice()
                    .iter()
                    .map(|x| (x / eps).floor() as i64)
                    .collect()
            })
            .collect();
        boxes.sort_unstable();
        boxes.dedup();
        out.push((eps, boxes.len()));
    }
    Ok(out)
}

pub const MAX_KOCH_LEVEL: u32 = 12;

/// The level-`n` Koch curve from `(0, 0)` to `(1, 0)`: `4^n` segments of
/// Euclidean length `3^{-n}`, sampled at `4^n + 1` uniform parameters of
/// `[0, 1]`.
pub fn koch_generator(level: u32) -> Result<Polyline> {
    if level > MAX_KOCH_LEVEL {
        return Err(Error::LevelTooLarge(level));
    }
    let (sin60, cos60) = (3f64.sqrt() / 2.0, 0.5);
    let mut pts: Vec<[f64; 2]> = vec![[0.0, 0.0], [1.0, 0.0]];
    for _ in 0..level {
        let mut next = Vec::with_capacity(4 * (pts.len() - 1) + 1);
        next.push(pts[0]);
        for w in pts.windows(2) {
            let (p, q) = (w[0], w[1]);
            let d = [(q[0] - p[0]) / 3.0, (q[1] - p[1]) / 3.0];
            let a = [p[0] + d[0], p[1] + d[1]];
            let b = [p[0] + 2.0 * d[0], p[1] + 2.0 * d[1]];
            // Apex: first third rotated by +60 degrees.
            let apex = [
                a[0] + d[0] * cos60 - d[1] * sin60,
                a[1] + d[0] * sin60 + d[1] * cos60,
            ];
            next.extend_from_slice(&[a, apex, b, q]);
        }
        pts = next;
    }
    let params = uniform_grid(pts.len());
    let points = pts
        .into_iter()
        .map(|p| Vector::new(p.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Polyline::new(params, points)
}

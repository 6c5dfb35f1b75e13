//! Norm-induced metrics `d_N(x, y) = N(x - y)` and their snowflakes `d^β`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::{check_dims, NormSpec, Vector};
use crate::sampling::{self, CheckOptions, CheckReport, PropertyResult};

/// Anything that can measure the distance between two points of `R^n`.
///
/// The sampled checks in this module are generic over this trait so that a
/// test harness can feed them raw distance functions that are not metrics.
pub trait MetricSpace {
    /// Distance between two points of equal, admissible dimension. Callers
    /// are responsible for dimension checks.
    fn dist(&self, x: &[f64], y: &[f64]) -> f64;

    /// Fixed dimension, if the space has one.
    fn fixed_dim(&self) -> Option<usize> {
        None
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        match self.fixed_dim() {
            Some(d) => check_dims(d, n),
            None if n == 0 => Err(Error::EmptyVector),
            None => Ok(()),
        }
    }
}

/// A bare distance function. Admits non-metrics on purpose.
#[derive(Debug, Clone, Copy)]
pub struct RawMetric<F>(pub F);

impl<F> MetricSpace for RawMetric<F>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        (self.0)(x, y)
    }
}

/// A metric on `R^n`: either induced by a norm, or a snowflake `d_N^β` of a
/// norm-induced metric with `0 < β <= 1`.
///
/// Snowflaking a snowflake multiplies the exponents, so nested snowflakes are
/// stored flat.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    NormInduced(NormSpec),
    Snowflake { base: NormSpec, beta: f64 },
}

impl Metric {
    pub fn norm(norm: NormSpec) -> Self {
        Metric::NormInduced(norm)
    }

    pub fn l1() -> Self {
        Metric::NormInduced(NormSpec::l1())
    }

    pub fn l2() -> Self {
        Metric::NormInduced(NormSpec::l2())
    }

    pub fn linf() -> Self {
        Metric::NormInduced(NormSpec::linf())
    }

    pub fn lp(p: f64) -> Result<Self> {
        Ok(Metric::NormInduced(NormSpec::lp(p)?))
    }

    /// `d^β`. `β = 1` is accepted and leaves distances unchanged.
    pub fn snowflake(self, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidSnowflake(beta));
        }
        Ok(match self {
            Metric::NormInduced(base) => Metric::Snowflake { base, beta },
            Metric::Snowflake { base, beta: inner } => Metric::Snowflake {
                base,
                beta: inner * beta,
            },
        })
    }

    pub fn base_norm(&self) -> &NormSpec {
        match self {
            Metric::NormInduced(n) => n,
            Metric::Snowflake { base, .. } => base,
        }
    }

    /// Overall exponent applied to the norm distance (1 when norm-induced).
    pub fn beta(&self) -> f64 {
        match self {
            Metric::NormInduced(_) => 1.0,
            Metric::Snowflake { beta, .. } => *beta,
        }
    }

    pub fn is_snowflake(&self) -> bool {
        matches!(self, Metric::Snowflake { .. })
    }

    pub fn distance(&self, x: &Vector, y: &Vector) -> Result<f64> {
        self.distance_slice(x.as_slice(), y.as_slice())
    }

    pub fn distance_slice(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dims(x.len(), y.len())?;
        self.check_dim(x.len())?;
        Ok(self.dist(x, y))
    }

    /// Norm-distance radius whose metric ball has radius `r`.
    fn norm_radius(&self, r: f64) -> f64 {
        match self {
            Metric::NormInduced(_) => r,
            Metric::Snowflake { beta, .. } => r.powf(beta.recip()),
        }
    }
}

impl MetricSpace for Metric {
    fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        let base = self.base_norm().fold_diff(x, y);
        match self {
            Metric::NormInduced(_) => base,
            Metric::Snowflake { beta, .. } => base.powf(*beta),
        }
    }

    fn fixed_dim(&self) -> Option<usize> {
        self.base_norm().dim()
    }
}

impl<M: MetricSpace + ?Sized> MetricSpace for &M {
    fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        (**self).dist(x, y)
    }

    fn fixed_dim(&self) -> Option<usize> {
        (**self).fixed_dim()
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::NormInduced(n) => write!(f, "{n}"),
            Metric::Snowflake { base, beta } => write!(f, "{base}:snow:{beta}"),
        }
    }
}

/// `d(x, z) - d(x, y) - d(y, z)`; positive means the triangle inequality
/// fails for this triple.
pub fn triangle_excess<M: MetricSpace>(m: &M, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    m.dist(x, z) - m.dist(x, y) - m.dist(y, z)
}

/// Sampled check of symmetry, identity of indiscernibles and the triangle
/// inequality in `R^dim`.
///
/// Half of the triples put the middle point on the segment between the other
/// two, where the triangle inequality is tight for norm-induced metrics.
pub fn check_metric_axioms<M: MetricSpace>(
    m: &M,
    dim: usize,
    opts: CheckOptions,
) -> Result<CheckReport> {
    m.check_dim(dim)?;
    let mut rng = sampling::rng(opts.seed);
    let tol = opts.rel_tol;
    let mut identity = PropertyResult::new("identity_of_indiscernibles");
    let mut symmetry = PropertyResult::new("symmetry");
    let mut triangle = PropertyResult::new("triangle_inequality");

    for _ in 0..opts.samples {
        let x = sampling::random_coords(&mut rng, dim);
        let z = sampling::random_coords(&mut rng, dim);
        let y = if rng.random_bool(0.5) {
            let t: f64 = rng.random();
            x.iter().zip(&z).map(|(a, b)| a + t * (b - a)).collect()
        } else {
            sampling::random_coords(&mut rng, dim)
        };

        let dxx = m.dist(&x, &x);
        identity.record_margin(if dxx == 0.0 { -1.0 } else { 1.0 }, tol, || {
            format!("d(x, x) = {dxx} for x = {x:?}")
        });
        let dxz = m.dist(&x, &z);
        let distinct_ok = if x == z { dxz == 0.0 } else { dxz > 0.0 };
        identity.record_margin(if distinct_ok { -1.0 } else { 1.0 }, tol, || {
            format!("d(x, z) = {dxz} for x = {x:?}, z = {z:?}")
        });

        let dzx = m.dist(&z, &x);
        symmetry.record_margin(if dxz == dzx { -1.0 } else { 1.0 }, tol, || {
            format!("d(x, z) = {dxz} but d(z, x) = {dzx}")
        });

        let dxy = m.dist(&x, &y);
        let dyz = m.dist(&y, &z);
        triangle.record_le(dxz, dxy + dyz, dxy + dyz, tol, || {
            format!(
                "d(x, z) = {dxz} > d(x, y) + d(y, z) = {} for x = {x:?}, y = {y:?}, z = {z:?}",
                dxy + dyz
            )
        });
    }

    Ok(CheckReport {
        properties: vec![identity, symmetry, triangle],
    })
}

/// Sampled check of `B(p, r) ⊆ B(q, r + d(p, q))` for open balls and its
/// closed-ball analogue.
///
/// Points of `B(p, r)` are drawn along random directions from `p`; closed-ball
/// samples include points on the sphere `d(p, z) = r`.
pub fn ball_containment_check(
    m: &Metric,
    p: &Vector,
    q: &Vector,
    r: f64,
    opts: CheckOptions,
) -> Result<CheckReport> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "ball radius must be positive, got {r}"
        )));
    }
    let dpq = m.distance(p, q)?;
    let dim = p.dim();
    let norm = m.base_norm();
    let mut rng = sampling::rng(opts.seed);
    let tol = opts.rel_tol;
    let outer = r + dpq;
    let mut open = PropertyResult::new("open_ball_containment");
    let mut closed = PropertyResult::new("closed_ball_containment");

    let rho = m.norm_radius(r);
    for i in 0..opts.samples {
        let u = loop {
            let u = sampling::random_coords(&mut rng, dim);
            let nu = norm.eval_unchecked(&u);
            if nu > 0.0 {
                break u.into_iter().map(|c| c / nu).collect::<Vec<_>>();
            }
        };
        let on_sphere = i % 2 == 1;
        let s = if on_sphere {
            rho
        } else {
            rho * rng.random::<f64>()
        };
        let z: Vec<f64> = p
            .as_slice()
            .iter()
            .zip(&u)
            .map(|(a, b)| a + s * b)
            .collect();
        let dpz = m.dist(p.as_slice(), &z);
        let dqz = m.dist(q.as_slice(), &z);
        let describe = || format!("z = {z:?}: d(p, z) = {dpz}, d(q, z) = {dqz}, bound {outer}");
        // Roundoff may push a sphere sample just outside; only judge
        // containment for points that really lie in the ball.
        if dpz < r {
            open.record_le(dqz, outer, outer, tol, describe);
            closed.record_le(dqz, outer, outer, tol, describe);
        } else if dpz <= r {
            closed.record_le(dqz, outer, outer, tol, describe);
        }
    }

    Ok(CheckReport {
        properties: vec![open, closed],
    })
}

/// Which side of a Hölder map gets snowflaked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SnowflakeSide {
    /// `d_1 -> d_1^β`: order `α` becomes `α / β`.
    Domain,
    /// `d_2 -> d_2^β`: order `α` becomes `α β`.
    Range,
}

/// The Hölder order of a map after snowflaking its domain or range metric.
pub fn snowflake_order_transfer(alpha: f64, beta: f64, side: SnowflakeSide) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidOrder(alpha));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidSnowflake(beta));
    }
    Ok(match side {
        SnowflakeSide::Domain => alpha / beta,
        SnowflakeSide::Range => alpha * beta,
    })
}

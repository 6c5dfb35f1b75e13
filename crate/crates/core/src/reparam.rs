//! Arc-length profiles and unit-speed reparameterization of sampled C¹
//! curves.
//!
//! Derivative samples come from the caller. The profile
//! `φ(t) = ∫_a^t N(p'(u)) du` is integrated with the composite trapezoid rule
//! on the curve's own grid (error `O(h²)` for smooth speed), and the
//! reparameterized curve `q = p ∘ φ⁻¹` is sampled exactly at the `φ(t_j)`, so
//! no inversion error enters.

use serde::Serialize;

use crate::curves::Polyline;
use crate::error::{Error, Result};
use crate::metrics::{Metric, MetricSpace};
use crate::norms::{check_dims, NormSpec, Vector};

/// Default lower bound on `N(p'(t_j))` for [`unit_speed_reparam`].
pub const DEFAULT_SPEED_FLOOR: f64 = 1e-9;

/// A polyline together with derivative samples `p'(t_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledC1Curve {
    base: Polyline,
    derivs: Vec<Vector>,
}

impl SampledC1Curve {
    pub fn new(base: Polyline, derivs: Vec<Vector>) -> Result<Self> {
        if derivs.len() != base.len() {
            return Err(Error::CurveLengthMismatch {
                params: base.len(),
                points: derivs.len(),
            });
        }
        for d in &derivs {
            check_dims(base.dim(), d.dim())?;
        }
        Ok(Self { base, derivs })
    }

    /// Samples `p` and `p'` at the given parameters.
    pub fn from_fn<P, D>(params: Vec<f64>, p: P, dp: D) -> Result<Self>
    where
        P: Fn(f64) -> Vec<f64>,
        D: Fn(f64) -> Vec<f64>,
    {
        let points = params
            .iter()
            .map(|&t| Vector::new(p(t)))
            .collect::<Result<Vec<_>>>()?;
        let derivs = params
            .iter()
            .map(|&t| Vector::new(dp(t)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Polyline::new(params, points)?, derivs)
    }

    pub fn base(&self) -> &Polyline {
        &self.base
    }

    pub fn derivs(&self) -> &[Vector] {
        &self.derivs
    }

    fn speeds(&self, norm: &NormSpec) -> Result<Vec<f64>> {
        self.derivs.iter().map(|d| norm.eval(d)).collect()
    }
}

/// `φ(t_j)` for every sample, by the composite trapezoid rule on `N(p')`.
/// `φ(t_0) = 0` and the profile is nondecreasing.
pub fn arclength_profile(c: &SampledC1Curve, norm: &NormSpec) -> Result<Vec<f64>> {
    if c.base.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: c.base.len(),
        });
    }
    let speeds = c.speeds(norm)?;
    Ok(cumulative_trapezoid(c.base.params(), &speeds))
}

fn cumulative_trapezoid(params: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(params.len());
    let mut acc = 0.0;
    out.push(acc);
    for j in 1..params.len() {
        acc += 0.5 * (values[j] + values[j - 1]) * (params[j] - params[j - 1]);
        out.push(acc);
    }
    out
}

/// `q = p ∘ φ⁻¹` sampled at `r_j = φ(t_j)`; points are the original points.
///
/// Fails when some `N(p'(t_j))` is below `speed_floor`, the numerical stand-in
/// for the requirement `p' ≠ 0`.
pub fn unit_speed_reparam(
    c: &SampledC1Curve,
    norm: &NormSpec,
    speed_floor: f64,
) -> Result<Polyline> {
    if c.base.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: c.base.len(),
        });
    }
    let speeds = c.speeds(norm)?;
    if let Some((index, &speed)) = speeds
        .iter()
        .enumerate()
        .find(|(_, s)| !(**s >= speed_floor))
    {
        return Err(Error::SpeedBelowFloor {
            index,
            speed,
            floor: speed_floor,
        });
    }
    let profile = cumulative_trapezoid(c.base.params(), &speeds);
    Polyline::new(profile, c.base.points().to_vec())
}

/// Speed diagnostics for a supposedly unit-speed curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitSpeedReport {
    /// All-pairs secant maximum; should not exceed 1.
    pub lipschitz_estimate: f64,
    /// Smallest adjacent secant speed; should not fall below 1.
    pub min_adjacent_speed: f64,
    pub tol: f64,
}

impl UnitSpeedReport {
    pub fn passed(&self) -> bool {
        self.lipschitz_estimate <= 1.0 + self.tol && self.min_adjacent_speed >= 1.0 - self.tol
    }
}

pub fn verify_unit_speed(q: &Polyline, norm: &NormSpec, tol: f64) -> Result<UnitSpeedReport> {
    let m = Metric::norm(norm.clone());
    let lipschitz_estimate = q.lipschitz_estimate(&m)?;
    let min_adjacent_speed = q
        .params()
        .windows(2)
        .zip(q.points().windows(2))
        .map(|(t, p)| m.dist(p[0].as_slice(), p[1].as_slice()) / (t[1] - t[0]))
        .fold(f64::INFINITY, f64::min);
    Ok(UnitSpeedReport {
        lipschitz_estimate,
        min_adjacent_speed,
        tol,
    })
}

/// Resamples a curve at `count` uniformly spaced parameters of its interval
/// by linear interpolation between neighbouring samples.
pub fn resample_uniform(q: &Polyline, count: usize) -> Result<Polyline> {
    if count < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: count,
        });
    }
    if q.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: q.len(),
        });
    }
    let (a, b) = q.interval();
    let params = q.params();
    let points = q.points();
    let mut out_params = Vec::with_capacity(count);
    let mut out_points = Vec::with_capacity(count);
    let mut seg = 0;
    for i in 0..count {
        let r = if i + 1 == count {
            b
        } else {
            a + (b - a) * i as f64 / (count - 1) as f64
        };
        while seg + 2 < params.len() && params[seg + 1] <= r {
            seg += 1;
        }
        let (t0, t1) = (params[seg], params[seg + 1]);
        let s = ((r - t0) / (t1 - t0)).clamp(0.0, 1.0);
        out_params.push(r);
        out_points.push(points[seg].lerp(&points[seg + 1], s)?);
    }
    Polyline::new(out_params, out_points)
}

/// Central-difference derivative estimates (one-sided at the ends).
///
/// Approximate: first order at the endpoints, second order inside on uniform
/// grids. Prefer exact derivatives when they are available.
pub fn central_difference_derivs(c: &Polyline) -> Result<SampledC1Curve> {
    let n = c.len();
    if n < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: n,
        });
    }
    let t = c.params();
    let p = c.points();
    let diff =
        |i: usize, j: usize| -> Result<Vector> { p[j].sub(&p[i])?.scale((t[j] - t[i]).recip()) };
    let mut derivs = Vec::with_capacity(n);
    derivs.push(diff(0, 1)?);
    for i in 1..n - 1 {
        derivs.push(diff(i - 1, i + 1)?);
    }
    derivs.push(diff(n - 2, n - 1)?);
    SampledC1Curve::new(c.clone(), derivs)
}

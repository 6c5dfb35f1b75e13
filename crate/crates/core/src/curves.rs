//! Sampled curves `t_0 < t_1 < … < t_n ↦ p_0, …, p_n` in `R^n`.

use crate::error::{Error, Result};
use crate::metrics::MetricSpace;
use crate::norms::{check_dims, Vector};

/// A polygonal curve: strictly increasing parameters paired with points of a
/// common dimension. A single sample is a legal (degenerate) curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    params: Vec<f64>,
    points: Vec<Vector>,
}

impl Polyline {
    pub fn new(params: Vec<f64>, points: Vec<Vector>) -> Result<Self> {
        if params.len() != points.len() {
            return Err(Error::CurveLengthMismatch {
                params: params.len(),
                points: points.len(),
            });
        }
        if params.is_empty() {
            return Err(Error::EmptyCurve);
        }
        if params.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("curve parameters"));
        }
        if let Some(i) = params.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NotIncreasing(i + 1));
        }
        let dim = points[0].dim();
        for p in &points[1..] {
            check_dims(dim, p.dim())?;
        }
        Ok(Self { params, points })
    }

    pub fn from_coords(params: Vec<f64>, points: Vec<Vec<f64>>) -> Result<Self> {
        let points = points
            .into_iter()
            .map(Vector::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(params, points)
    }

    /// Samples `p(t) = start + t (end - start)` at `count >= 2` uniform
    /// parameters of `[0, 1]`.
    pub fn segment(start: &Vector, end: &Vector, count: usize) -> Result<Self> {
        check_dims(start.dim(), end.dim())?;
        if count < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                found: count,
            });
        }
        let params = uniform_grid(count);
        let mut points = Vec::with_capacity(count);
        for (i, &t) in params.iter().enumerate() {
            points.push(if i == 0 {
                start.clone()
            } else if i + 1 == count {
                end.clone()
            } else {
                start.lerp(end, t)?
            });
        }
        Self::new(params, points)
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn start(&self) -> &Vector {
        &self.points[0]
    }

    pub fn end(&self) -> &Vector {
        &self.points[self.points.len() - 1]
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.params[0], self.params[self.params.len() - 1])
    }

    pub fn interval_length(&self) -> f64 {
        let (a, b) = self.interval();
        b - a
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<Vector>) {
        (self.params, self.points)
    }

    /// Partition-sum length `Σ d(p_j, p_{j-1})`; zero for a single sample.
    pub fn length<M: MetricSpace>(&self, m: &M) -> Result<f64> {
        m.check_dim(self.dim())?;
        Ok(self
            .points
            .windows(2)
            .map(|w| m.dist(w[0].as_slice(), w[1].as_slice()))
            .sum())
    }

    /// Largest secant ratio `d(p_j, p_k) / (t_k - t_j)` over all sample
    /// pairs. This is a lower bound for the Lipschitz constant of any curve
    /// through the samples.
    pub fn lipschitz_estimate<M: MetricSpace>(&self, m: &M) -> Result<f64> {
        Ok(self.lipschitz_witness(m)?.0)
    }

    /// Like [`Polyline::lipschitz_estimate`], also returning the lowest
    /// index pair attaining the maximum.
    pub fn lipschitz_witness<M: MetricSpace>(&self, m: &M) -> Result<(f64, usize, usize)> {
        self.require_pair()?;
        m.check_dim(self.dim())?;
        let mut best = (0.0, 0, 1);
        for j in 0..self.len() {
            let pj = self.points[j].as_slice();
            for k in j + 1..self.len() {
                let ratio =
                    m.dist(pj, self.points[k].as_slice()) / (self.params[k] - self.params[j]);
                if ratio > best.0 {
                    best = (ratio, j, k);
                }
            }
        }
        Ok(best)
    }

    /// Adjacent secants only: `O(n)`, but can underestimate when the
    /// interpolant between samples is not a geodesic.
    pub fn lipschitz_estimate_adjacent<M: MetricSpace>(&self, m: &M) -> Result<f64> {
        self.require_pair()?;
        m.check_dim(self.dim())?;
        Ok(self
            .params
            .windows(2)
            .zip(self.points.windows(2))
            .map(|(t, p)| m.dist(p[0].as_slice(), p[1].as_slice()) / (t[1] - t[0]))
            .fold(0.0, f64::max))
    }

    fn require_pair(&self) -> Result<()> {
        if self.len() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                found: self.len(),
            });
        }
        Ok(())
    }

    /// Concatenates `self` on `[a, b]` with `next` on `[b, c]`. The junction
    /// points and parameters must match exactly; the duplicate sample is
    /// dropped.
    pub fn glue(&self, next: &Polyline) -> Result<Polyline> {
        if self.interval().1 != next.interval().0 {
            return Err(Error::JunctionMismatch("parameter"));
        }
        if self.end() != next.start() {
            return Err(Error::JunctionMismatch("endpoint"));
        }
        self.concat(next)
    }

    /// [`Polyline::glue`] with the endpoint test relaxed to a coordinate-wise
    /// tolerance; the junction takes `self`'s endpoint.
    pub fn glue_snapped(&self, next: &Polyline, tol: f64) -> Result<Polyline> {
        if self.interval().1 != next.interval().0 {
            return Err(Error::JunctionMismatch("parameter"));
        }
        check_dims(self.dim(), next.dim())?;
        if coord_gap(self.end(), next.start()) > tol {
            return Err(Error::JunctionMismatch("endpoint"));
        }
        self.concat(next)
    }

    fn concat(&self, next: &Polyline) -> Result<Polyline> {
        check_dims(self.dim(), next.dim())?;
        let mut params = self.params.clone();
        let mut points = self.points.clone();
        params.extend_from_slice(&next.params[1..]);
        points.extend_from_slice(&next.points[1..]);
        Polyline::new(params, points)
    }

    /// Maps the parameter interval affinely onto `[a, b]`, keeping points.
    /// A single-sample curve lands on `a`.
    pub fn rescale(&self, a: f64, b: f64) -> Result<Polyline> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInterval { a, b });
        }
        let (t0, t1) = self.interval();
        let n = self.len();
        let params: Vec<f64> = if n == 1 {
            vec![a]
        } else {
            self.params
                .iter()
                .enumerate()
                .map(|(i, &t)| match i {
                    0 => a,
                    i if i + 1 == n => b,
                    _ => a + (t - t0) / (t1 - t0) * (b - a),
                })
                .collect()
        };
        Polyline::new(params, self.points.clone())
    }

    /// Collapses every maximal run of consecutive samples lying within `tol`
    /// (coordinate-wise) of the run's first point onto that first point, and
    /// shifts the remaining parameters left by the removed time.
    pub fn remove_constant_pieces(&self, tol: f64) -> Polyline {
        let n = self.len();
        let mut params = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        let mut shift = 0.0;
        let mut i = 0;
        while i < n {
            let anchor = &self.points[i];
            let mut j = i + 1;
            while j < n && coord_gap(anchor, &self.points[j]) <= tol {
                j += 1;
            }
            params.push(self.params[i] - shift);
            points.push(anchor.clone());
            shift += self.params[j - 1] - self.params[i];
            i = j;
        }
        // Parameter differences of kept samples are differences of original
        // parameters, so strict monotonicity survives.
        Polyline { params, points }
    }
}

fn coord_gap(a: &Vector, b: &Vector) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `count` uniformly spaced parameters on `[0, 1]` with exact endpoints.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let last = (count - 1) as f64;
            (0..count).map(|i| i as f64 / last).collect()
        }
    }
}

//! Vectors of `R^n` and the weighted `l^p` family of norms.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::sampling::{self, CheckOptions, CheckReport, PropertyResult};

/// A point of `R^n` with `n >= 1` finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("vector coordinates"));
        }
        Ok(Self(coords))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    /// The standard basis vector `e_j` of `R^n` (zero-based `j`).
    pub fn basis(n: usize, j: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::BasisIndex { index: j, dim: n });
        }
        let mut coords = vec![0.0; n];
        coords[j] = 1.0;
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        check_dims(self.dim(), other.dim())?;
        Vector::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        check_dims(self.dim(), other.dim())?;
        Vector::new(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, r: f64) -> Result<Vector> {
        Vector::new(self.0.iter().map(|a| r * a).collect())
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Vector, t: f64) -> Result<Vector> {
        check_dims(self.dim(), other.dim())?;
        Vector::new(lerp_coords(&self.0, &other.0, t))
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn lerp_coords(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// The exponent of an `l^p` norm. `p = ∞` is its own variant rather than a
/// large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        if p.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(p))
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("not a norm exponent: {s:?}")))?;
        Exponent::finite(p)
    }
}

/// A weighted `l^p` norm `N(x) = ‖(w_1 x_1, …, w_n x_n)‖_p`.
///
/// Without weights the norm applies to every dimension; with weights its
/// dimension is fixed to the number of weights.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    exponent: Exponent,
    weights: Option<Vec<f64>>,
}

impl NormSpec {
    pub fn new(exponent: Exponent) -> Self {
        Self {
            exponent,
            weights: None,
        }
    }

    /// `l^p` for a real `p >= 1`; `f64::INFINITY` maps to the sup norm.
    pub fn lp(p: f64) -> Result<Self> {
        Ok(Self::new(Exponent::finite(p)?))
    }

    pub fn l1() -> Self {
        Self::new(Exponent::Finite(1.0))
    }

    pub fn l2() -> Self {
        Self::new(Exponent::Finite(2.0))
    }

    pub fn linf() -> Self {
        Self::new(Exponent::Infinity)
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidWeights);
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// The fixed dimension of a weighted norm; `None` when unweighted.
    pub fn dim(&self) -> Option<usize> {
        self.weights.as_ref().map(Vec::len)
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self.dim() {
            Some(d) => check_dims(d, n),
            None if n == 0 => Err(Error::EmptyVector),
            None => Ok(()),
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        self.eval_slice(x.as_slice())
    }

    pub fn eval_slice(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.eval_unchecked(x))
    }

    /// `N(x - y)` without allocating.
    pub fn eval_diff(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dims(x.len(), y.len())?;
        self.check_dim(x.len())?;
        Ok(self.fold_diff(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.fold(x.iter().copied())
    }

    pub(crate) fn fold_diff(&self, x: &[f64], y: &[f64]) -> f64 {
        self.fold(x.iter().zip(y).map(|(a, b)| a - b))
    }

    fn fold<I>(&self, coords: I) -> f64
    where
        I: Iterator<Item = f64> + Clone,
    {
        match &self.weights {
            Some(w) => eval_abs(
                self.exponent,
                coords.zip(w.iter()).map(|(c, w)| (w * c).abs()),
            ),
            None => eval_abs(self.exponent, coords.map(f64::abs)),
        }
    }

    /// True iff the unit ball is strictly convex in `R^dim`.
    ///
    /// Every norm on `R^1` is a multiple of the absolute value, which is
    /// strictly convex; for `dim >= 2` exactly `1 < p < ∞` qualifies.
    /// Diagonal weights are a linear isomorphism and do not change the answer.
    pub fn is_strictly_convex(&self, dim: usize) -> bool {
        if dim <= 1 {
            return true;
        }
        matches!(self.exponent, Exponent::Finite(p) if p > 1.0)
    }

    /// `max_j N(e_j)`, the constant in `N(x) <= max_j N(e_j) ‖x‖_1`.
    pub fn basis_bound(&self, dim: usize) -> Result<f64> {
        self.check_dim(dim)?;
        Ok(match &self.weights {
            Some(w) => w.iter().copied().fold(0.0, f64::max),
            None => 1.0,
        })
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lp:{}", self.exponent)?;
        if let Some(w) = &self.weights {
            write!(f, " weights={w:?}")?;
        }
        Ok(())
    }
}

// Evaluates the l^p norm of already non-negative magnitudes. Finite p > 1
// uses the max-factored form to stay clear of overflow and underflow.
fn eval_abs<I>(exponent: Exponent, mags: I) -> f64
where
    I: Iterator<Item = f64> + Clone,
{
    let max = mags.clone().fold(0.0, f64::max);
    match exponent {
        Exponent::Infinity => max,
        Exponent::Finite(1.0) => mags.sum(),
        Exponent::Finite(_) if max == 0.0 => 0.0,
        Exponent::Finite(2.0) => {
            let s: f64 = mags.map(|a| (a / max) * (a / max)).sum();
            max * s.sqrt()
        }
        Exponent::Finite(p) => {
            let s: f64 = mags.map(|a| (a / max).powf(p)).sum();
            max * s.powf(p.recip())
        }
    }
}

/// Sampled check of positivity, homogeneity `N(r x) = |r| N(x)` and
/// subadditivity `N(x + y) <= N(x) + N(y)` on pseudorandom vectors of
/// `R^dim`.
pub fn check_norm_axioms(norm: &NormSpec, dim: usize, opts: CheckOptions) -> Result<CheckReport> {
    norm.check_dim(dim)?;
    let mut rng = sampling::rng(opts.seed);
    let tol = opts.rel_tol;
    let mut positivity = PropertyResult::new("positivity");
    let mut homogeneity = PropertyResult::new("homogeneity");
    let mut subadditivity = PropertyResult::new("subadditivity");

    let zero = vec![0.0; dim];
    let nz = norm.eval_unchecked(&zero);
    positivity.record_margin(if nz == 0.0 { -1.0 } else { 1.0 }, tol, || {
        format!("N(0) = {nz}")
    });

    for _ in 0..opts.samples {
        let x = sampling::random_coords(&mut rng, dim);
        let y = sampling::random_coords(&mut rng, dim);
        let r = rng.random_range(-1.0..1.0) * 10f64.powf(rng.random_range(-2.0..2.0));

        let nx = norm.eval_unchecked(&x);
        let ny = norm.eval_unchecked(&y);
        let x_is_zero = x.iter().all(|&c| c == 0.0);
        let ok = if x_is_zero { nx == 0.0 } else { nx > 0.0 };
        positivity.record_margin(if ok { -1.0 } else { 1.0 }, tol, || {
            format!("N({x:?}) = {nx}")
        });

        let rx: Vec<f64> = x.iter().map(|c| r * c).collect();
        let lhs = norm.eval_unchecked(&rx);
        let rhs = r.abs() * nx;
        homogeneity.record_le((lhs - rhs).abs(), 0.0, rhs, tol, || {
            format!("N(r x) = {lhs} but |r| N(x) = {rhs} for r = {r}, x = {x:?}")
        });

        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = norm.eval_unchecked(&sum);
        subadditivity.record_le(lhs, nx + ny, nx + ny, tol, || {
            format!(
                "N(x + y) = {lhs} > N(x) + N(y) = {} for x = {x:?}, y = {y:?}",
                nx + ny
            )
        });
    }

    Ok(CheckReport {
        properties: vec![positivity, homogeneity, subadditivity],
    })
}

/// Sampled check that the closed unit ball `{N <= 1}` is convex: for `x`,
/// `y` in the ball and `t ∈ [0, 1]`, `N(t x + (1 - t) y) <= 1 + tol`.
///
/// Half of the samples sit on the unit sphere, where the check is tightest.
pub fn check_unit_ball_convexity(
    norm: &NormSpec,
    dim: usize,
    opts: CheckOptions,
) -> Result<CheckReport> {
    norm.check_dim(dim)?;
    let mut rng = sampling::rng(opts.seed);
    let mut convexity = PropertyResult::new("unit_ball_convexity");

    let ball_point = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let v = sampling::random_coords(rng, dim);
        let nv = norm.eval_unchecked(&v);
        if nv > 0.0 {
            let radius = if rng.random_bool(0.5) {
                1.0
            } else {
                rng.random::<f64>()
            };
            break v.into_iter().map(|c| c * radius / nv).collect::<Vec<_>>();
        }
    };

    for _ in 0..opts.samples {
        let x = ball_point(&mut rng);
        let y = ball_point(&mut rng);
        let t: f64 = rng.random();
        let z: Vec<f64> = x
            .iter()
            .zip(&y)
            .map(|(a, b)| t * a + (1.0 - t) * b)
            .collect();
        let nz = norm.eval_unchecked(&z);
        convexity.record_le(nz, 1.0, 1.0, opts.rel_tol, || {
            format!("N(t x + (1 - t) y) = {nz} for t = {t}, x = {x:?}, y = {y:?}")
        });
    }

    Ok(CheckReport {
        properties: vec![convexity],
    })
}

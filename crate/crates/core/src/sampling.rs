//! Seeded sampling and the report type shared by every randomized check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Default relative tolerance for sampled inequality checks.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Sample count, seed and tolerance for a randomized check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub rel_tol: f64,
}

impl CheckOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            rel_tol: DEFAULT_REL_TOL,
        }
    }

    pub fn with_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Outcome of checking one inequality or identity over many samples.
///
/// `worst_margin` is the largest normalized excess `(lhs - rhs) / scale`
/// seen; a value at or below `rel_tol` means the property held everywhere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checks: usize,
    pub violations: usize,
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
}

impl PropertyResult {
    pub fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            violations: 0,
            worst_margin: f64::NEG_INFINITY,
            first_violation: None,
        }
    }

    /// Record `lhs <= rhs` with the excess taken relative to `scale`.
    /// A zero scale falls back to an absolute comparison.
    pub(crate) fn record_le(
        &mut self,
        lhs: f64,
        rhs: f64,
        scale: f64,
        tol: f64,
        what: impl FnOnce() -> String,
    ) {
        let scale = scale.abs();
        let margin = (lhs - rhs) / if scale > 0.0 { scale } else { 1.0 };
        self.record_margin(margin, tol, what);
    }

    pub(crate) fn record_margin(&mut self, margin: f64, tol: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        // NaN margins count as failures.
        if margin > self.worst_margin || margin.is_nan() {
            self.worst_margin = margin;
        }
        if !(margin <= tol) {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A bundle of property results from one check operation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub properties: Vec<PropertyResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn violations(&self) -> usize {
        self.properties.iter().map(|p| p.violations).sum()
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    /// Largest normalized excess over all properties.
    pub fn worst_margin(&self) -> f64 {
        self.properties
            .iter()
            .map(|p| p.worst_margin)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random coordinates spanning several orders of magnitude, with occasional
/// exact zeros so that degenerate directions get exercised.
pub fn random_coords<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let exponent: f64 = rng.random_range(-3.0..3.0);
    let scale = 10f64.powf(exponent);
    (0..n)
        .map(|_| {
            if rng.random_bool(0.05) {
                0.0
            } else {
                rng.random_range(-1.0..1.0) * scale
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        let a = random_coords(&mut rng(7), 5);
        let b = random_coords(&mut rng(7), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn nan_margin_is_a_violation() {
        let mut p = PropertyResult::new("x");
        p.record_margin(f64::NAN, 1e-9, || "nan".into());
        assert!(!p.passed());
        assert!(p.worst_margin.is_nan());
    }
}

//! Geometry of finite-dimensional normed spaces and their snowflakes.
//!
//! The crate is organised bottom-up:
//!
//! - [`norms`]: vectors of `R^n`, the weighted `l^p` family and sampled
//!   axiom checks.
//! - [`metrics`]: norm-induced and snowflaked metrics, metric axiom checks and
//!   ball containment.
//! - [`curves`]: sampled curves, partition-sum length, Lipschitz estimates,
//!   gluing, rescaling and removal of stationary pieces.
//! - [`reparam`]: arc-length profiles and unit-speed reparameterization of
//!   sampled C¹ curves.
//! - [`geodesic`]: a discrete solver for paths of minimal Lipschitz constant
//!   between fixed endpoints, plus the non-uniqueness constructions for
//!   `l^1` and `l^∞`.
//! - [`holder`]: Lipschitz/Hölder constant calculus, empirical `(C, α)`
//!   fitting, covering sums and a Koch curve generator.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curves;
mod error;
pub mod geodesic;
pub mod holder;
pub mod metrics;
pub mod norms;
pub mod reparam;
pub mod sampling;

pub use crate::curves::Polyline;
pub use crate::error::{Error, Result};
pub use crate::geodesic::{GeodesicProblem, GeodesicResult};
pub use crate::holder::{HolderFit, LipBound};
pub use crate::metrics::{Metric, MetricSpace};
pub use crate::norms::{Exponent, NormSpec, Vector};
pub use crate::reparam::SampledC1Curve;
pub use crate::sampling::{CheckOptions, CheckReport};

//! Integration engines.
//!
//! [`adaptive_radial`] handles the one-dimensional radial integrals
//! `∫ ds s⁴ Π P(s)` left after reducing the half-space pair; the Monte Carlo
//! side ([`mc_halfspaces`], [`mc_integrate`]) samples the unreduced domains
//! and serves as an independent check. All Monte Carlo estimates are
//! bitwise reproducible for a fixed seed, whatever the thread count.

mod gauss;
pub(crate) mod mc;
mod radial;

use serde::{Deserialize, Serialize};

pub use gauss::GaussLegendre;
pub use mc::{mc_halfspaces, mc_integrate, McConfig, BATCH_SIZE, DEFAULT_MC_TOLERANCE};
pub use radial::{adaptive_radial, adaptive_radial_with, RadialOptions, DEFAULT_RADIAL_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate (standard error for Monte Carlo).
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

//! Euclidean scalar propagators in four dimensions.
//!
//! Position space: `P(s; m) = m·K₁(m·s)/(4π²·s)`, reducing to `1/(4π²s²)` for a
//! massless field. Pauli-Villars regularisation subtracts the same propagator
//! at the regulator mass `Λ`, which cancels the `1/s²` singularity and leaves
//! at most a logarithm at `s → 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_k1, one_minus_x_k1};
use crate::error::{Error, Result};

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

/// Argument above which `1 − x·K₁(x)` is formed from `x·K₁(x)` directly.
const LARGE_ARGUMENT: f64 = 2.0;

/// A physical propagator paired with its Pauli-Villars regulator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegulatedPropagator {
    physical_mass: f64,
    regulator_mass: f64,
}

impl RegulatedPropagator {
    pub fn new(physical_mass: f64, regulator_mass: f64) -> Result<Self> {
        check_mass(physical_mass)?;
        if !(regulator_mass.is_finite() && regulator_mass > physical_mass) {
            return Err(Error::domain(format!(
                "regulator mass {regulator_mass} must exceed physical mass {physical_mass}"
            )));
        }
        Ok(RegulatedPropagator { physical_mass, regulator_mass })
    }

    pub fn physical_mass(&self) -> f64 {
        self.physical_mass
    }

    pub fn regulator_mass(&self) -> f64 {
        self.regulator_mass
    }

    /// Position-space value at separation `s > 0`.
    pub fn at(&self, s: f64) -> Result<f64> {
        check_separation(s)?;
        Ok(pv_unchecked(s, self.physical_mass, self.regulator_mass))
    }

    /// Momentum-space value `1/(k²+m²) − 1/(k²+Λ²)`.
    pub fn momentum(&self, k_squared: f64) -> f64 {
        let (m2, l2) = (self.physical_mass.powi(2), self.regulator_mass.powi(2));
        (l2 - m2) / ((k_squared + m2) * (k_squared + l2))
    }
}

fn check_mass(mass: f64) -> Result<()> {
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(Error::domain(format!("mass must be finite and ≥ 0, got {mass}")));
    }
    Ok(())
}

fn check_separation(s: f64) -> Result<()> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::domain(format!("separation must be positive, got {s}")));
    }
    Ok(())
}

/// `1/(k² + m²)`.
pub fn momentum_propagator(k_squared: f64, mass: f64) -> Result<f64> {
    let denom = k_squared + mass * mass;
    if denom == 0.0 {
        return Err(Error::Singularity);
    }
    if k_squared < 0.0 || !denom.is_finite() {
        return Err(Error::domain(format!("k² must be finite and ≥ 0, got {k_squared}")));
    }
    Ok(1.0 / denom)
}

/// Four-dimensional Euclidean propagator at separation `s`.
pub fn position_propagator(separation: f64, mass: f64) -> Result<f64> {
    check_separation(separation)?;
    check_mass(mass)?;
    Ok(position_unchecked(separation, mass))
}

pub(crate) fn position_unchecked(s: f64, mass: f64) -> f64 {
    if mass == 0.0 {
        return 1.0 / (FOUR_PI_SQ * s * s);
    }
    let x = mass * s;
    if x <= LARGE_ARGUMENT {
        (1.0 - one_minus_x_k1(x)) / (FOUR_PI_SQ * s * s)
    } else {
        mass * bessel_k1(x) / (FOUR_PI_SQ * s)
    }
}

/// `position_propagator(s, m) − position_propagator(s, Λ)`.
pub fn pv_position_propagator(separation: f64, physical_mass: f64, regulator_mass: f64) -> Result<f64> {
    RegulatedPropagator::new(physical_mass, regulator_mass)?.at(separation)
}

pub(crate) fn pv_unchecked(s: f64, m: f64, lambda: f64) -> f64 {
    if m * s > LARGE_ARGUMENT {
        // both terms are already small; no cancellation to guard against
        return position_unchecked(s, m) - position_unchecked(s, lambda);
    }
    let lx = lambda * s;
    let reg = if lx > LARGE_ARGUMENT { 1.0 - lx * bessel_k1(lx) } else { one_minus_x_k1(lx) };
    (reg - one_minus_x_k1(m * s)) / (FOUR_PI_SQ * s * s)
}

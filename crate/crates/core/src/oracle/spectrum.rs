use serde::{Deserialize, Serialize};

use super::lattice::{ground_state_covariance, LatticeSpec, Subsystem};
use crate::error::{Error, Result};
use crate::model::RenyiIndex;

/// Roundoff allowance below `ν = ½` before a spectrum is declared unphysical.
pub(crate) const NU_FLOOR: f64 = 1e-10;

/// Williamson eigenvalues `ν ≥ ½` of a reduced Gaussian state, stored with
/// their offsets `ν − ½` so nearly pure modes keep full relative precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub values: Vec<f64>,
    offsets: Vec<f64>,
}

impl SymplecticSpectrum {
    /// From raw eigenvalues; those within the roundoff floor below `½` are
    /// clipped.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(values.len());
        let mut clipped = Vec::with_capacity(values.len());
        for v in values {
            if !(v >= 0.5 - NU_FLOOR) {
                return Err(Error::Instability(format!("symplectic eigenvalue {v} below 1/2")));
            }
            let v = v.max(0.5);
            clipped.push(v);
            offsets.push(v - 0.5);
        }
        Ok(SymplecticSpectrum { values: clipped, offsets })
    }

    fn from_offsets(offsets: Vec<f64>) -> Self {
        SymplecticSpectrum { values: offsets.iter().map(|d| 0.5 + d).collect(), offsets }
    }

    /// `(1/(α−1))·Σ ln[(ν+½)^α − (ν−½)^α]`.
    pub fn renyi(&self, alpha: RenyiIndex) -> f64 {
        let a = alpha.get() as i32;
        let sum: f64 = self
            .offsets
            .iter()
            .map(|&d| {
                if d == 0.0 {
                    0.0
                } else {
                    a as f64 * d.ln_1p() + (-(d / (1.0 + d)).powi(a)).ln_1p()
                }
            })
            .sum();
        sum / (a - 1) as f64
    }
}

/// Per-mode spectrum of the reduced state of one field. Both reductions of
/// the pure ground state share this spectrum.
pub fn symplectic_spectrum(spec: &LatticeSpec, _subsystem: Subsystem) -> Result<SymplecticSpectrum> {
    let cov = ground_state_covariance(spec)?;
    let offsets = cov
        .modes
        .iter()
        .map(|m| {
            let eps = m.excess(spec);
            0.5 * eps / ((1.0 + eps).sqrt() + 1.0)
        })
        .collect();
    Ok(SymplecticSpectrum::from_offsets(offsets))
}

pub fn renyi_subsystem_entropy(spec: &LatticeSpec, alpha: u32, subsystem: Subsystem) -> Result<f64> {
    let alpha = RenyiIndex::new(alpha)?;
    Ok(symplectic_spectrum(spec, subsystem)?.renyi(alpha))
}

/// Rényi entropy of the `φ` field in the ground state.
pub fn renyi_field_entropy(spec: &LatticeSpec, alpha: u32) -> Result<f64> {
    renyi_subsystem_entropy(spec, alpha, Subsystem::Phi)
}

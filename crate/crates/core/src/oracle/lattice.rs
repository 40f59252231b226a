use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_MODES: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    Phi,
    Chi,
}

/// Periodic lattice with unit spacing. Even `sites` keeps the spectrum
/// symmetric under `k → π − k` but is not required.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    dims: u32,
    sites: usize,
    mass_phi: f64,
    mass_chi: f64,
    bilinear_g: f64,
}

impl LatticeSpec {
    pub fn new(dims: u32, sites: usize, mass_phi: f64, mass_chi: f64, bilinear_g: f64) -> Result<Self> {
        if !(1..=3).contains(&dims) {
            return Err(Error::domain(format!("lattice dimension must be 1, 2 or 3, got {dims}")));
        }
        if sites < 2 {
            return Err(Error::domain(format!("need at least two sites per dimension, got {sites}")));
        }
        if sites.checked_pow(dims).is_none_or(|n| n > MAX_MODES) {
            return Err(Error::domain(format!("{sites}^{dims} sites exceeds the mode budget {MAX_MODES}")));
        }
        for (name, m) in [("m_φ", mass_phi), ("m_χ", mass_chi)] {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::domain(format!("{name} must be positive, got {m}")));
            }
        }
        if !bilinear_g.is_finite() {
            return Err(Error::domain("coupling g must be finite"));
        }
        if bilinear_g * bilinear_g >= (mass_phi * mass_chi).powi(2) {
            return Err(Error::Instability(format!(
                "g² = {} must stay below m_φ²·m_χ² = {} for a positive lowest normal mode",
                bilinear_g * bilinear_g,
                (mass_phi * mass_chi).powi(2)
            )));
        }
        Ok(LatticeSpec { dims, sites, mass_phi, mass_chi, bilinear_g })
    }

    pub fn dims(&self) -> u32 {
        self.dims
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn mass_phi(&self) -> f64 {
        self.mass_phi
    }

    pub fn mass_chi(&self) -> f64 {
        self.mass_chi
    }

    pub fn bilinear_g(&self) -> f64 {
        self.bilinear_g
    }

    pub fn volume(&self) -> usize {
        self.sites.pow(self.dims)
    }

    pub fn with_coupling(&self, g: f64) -> Result<Self> {
        Self::new(self.dims, self.sites, self.mass_phi, self.mass_chi, g)
    }

    pub fn with_sites(&self, sites: usize) -> Result<Self> {
        Self::new(self.dims, sites, self.mass_phi, self.mass_chi, self.bilinear_g)
    }

    /// Same lattice with the two fields relabelled.
    pub fn swapped(&self) -> Self {
        LatticeSpec { mass_phi: self.mass_chi, mass_chi: self.mass_phi, ..*self }
    }

    /// Multi-index of flat site or mode index `n`, first coordinate fastest.
    pub(crate) fn coords(&self, mut n: usize) -> Vec<usize> {
        (0..self.dims)
            .map(|_| {
                let c = n % self.sites;
                n /= self.sites;
                c
            })
            .collect()
    }

    pub(crate) fn momentum(&self, mode: usize) -> Vec<f64> {
        self.coords(mode).into_iter().map(|c| 2.0 * PI * c as f64 / self.sites as f64).collect()
    }
}

/// Ground-state data of one momentum mode. Moments are `⟨·⟩` of the mode
/// operators, so the `φφ` entry at `g = 0` is `1/(2ω_φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeMoments {
    pub k_hat_sq: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Rotation taking `(φ, χ)` to the normal mode with frequency `ω₊`.
    pub theta: f64,
    pub phi_phi: f64,
    pub chi_chi: f64,
    pub phi_chi: f64,
    pub pi_phi_pi_phi: f64,
    pub pi_chi_pi_chi: f64,
    pub pi_phi_pi_chi: f64,
}

impl ModeMoments {
    fn new(k_hat_sq: f64, spec: &LatticeSpec) -> Result<Self> {
        let a = k_hat_sq + spec.mass_phi * spec.mass_phi;
        let b = k_hat_sq + spec.mass_chi * spec.mass_chi;
        let g = spec.bilinear_g;
        let theta = 0.5 * (2.0 * g).atan2(a - b);
        let radius = (0.25 * (a - b) * (a - b) + g * g).sqrt();
        let plus_sq = 0.5 * (a + b) + radius;
        // ω₊²ω₋² = ab − g², without cancellation in the lower root
        let minus_sq = (a * b - g * g) / plus_sq;
        if !(minus_sq > 0.0) {
            return Err(Error::Instability(format!("normal-mode frequency² = {minus_sq} at k̂² = {k_hat_sq}")));
        }
        let (wp, wm) = (plus_sq.sqrt(), minus_sq.sqrt());
        let (c, s) = match g {
            0.0 if a >= b => (1.0, 0.0),
            0.0 => (0.0, 1.0),
            _ => (theta.cos(), theta.sin()),
        };
        let power = |p: f64| {
            let (up, um) = (wp.powf(2.0 * p), wm.powf(2.0 * p));
            (c * c * up + s * s * um, s * s * up + c * c * um, c * s * (up - um))
        };
        let (x11, x22, x12) = power(-0.5);
        let (p11, p22, p12) = power(0.5);
        Ok(ModeMoments {
            k_hat_sq,
            omega_plus: wp,
            omega_minus: wm,
            theta,
            phi_phi: 0.5 * x11,
            chi_chi: 0.5 * x22,
            phi_chi: 0.5 * x12,
            pi_phi_pi_phi: 0.5 * p11,
            pi_chi_pi_chi: 0.5 * p22,
            pi_phi_pi_chi: 0.5 * p12,
        })
    }

    /// `ε = 4ν² − 1` of the reduced mode, from a form free of cancellation
    /// at small `g`.
    pub(crate) fn excess(&self, spec: &LatticeSpec) -> f64 {
        let g = spec.bilinear_g;
        if g == 0.0 {
            return 0.0;
        }
        let a = self.k_hat_sq + spec.mass_phi * spec.mass_phi;
        let b = self.k_hat_sq + spec.mass_chi * spec.mass_chi;
        let det = (a * b - g * g).sqrt();
        let root_ab = (a * b).sqrt();
        let mixing = g * g / ((a - b) * (a - b) + 4.0 * g * g);
        let split = (a.sqrt() - b.sqrt()).powi(2) + 2.0 * g * g / (root_ab + det);
        mixing * split / det
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceData {
    pub spec: LatticeSpec,
    pub modes: Vec<ModeMoments>,
}

impl CovarianceData {
    /// Real-space `(⟨a₀ b_r⟩, ⟨π_a₀ π_b_r⟩)` for lattice displacement `r`.
    pub fn correlator(&self, a: Subsystem, b: Subsystem, displacement: &[usize]) -> (f64, f64) {
        let volume = self.modes.len() as f64;
        let (mut x, mut p) = (0.0, 0.0);
        for (n, m) in self.modes.iter().enumerate() {
            let k = self.spec.momentum(n);
            let phase: f64 = k.iter().zip(displacement).map(|(k, r)| k * *r as f64).sum();
            let (xm, pm) = match (a, b) {
                (Subsystem::Phi, Subsystem::Phi) => (m.phi_phi, m.pi_phi_pi_phi),
                (Subsystem::Chi, Subsystem::Chi) => (m.chi_chi, m.pi_chi_pi_chi),
                _ => (m.phi_chi, m.pi_phi_pi_chi),
            };
            x += xm * phase.cos();
            p += pm * phase.cos();
        }
        (x / volume, p / volume)
    }
}

/// Per-mode ground-state moments of the coupled pair.
pub fn ground_state_covariance(spec: &LatticeSpec) -> Result<CovarianceData> {
    let modes = (0..spec.volume())
        .map(|n| {
            let k_hat_sq = spec.momentum(n).iter().map(|k| 4.0 * (0.5 * k).sin().powi(2)).sum();
            ModeMoments::new(k_hat_sq, spec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CovarianceData { spec: *spec, modes })
}

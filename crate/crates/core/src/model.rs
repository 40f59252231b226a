//! Model parameters for the linear σ model and the broken-phase shift scale.
//!
//! A [`FieldTheory`] is validated once on construction; everything downstream
//! may assume an admissible model. In the broken phase the perturbative
//! expansion is organised around a shift scale `u` instead of the vacuum
//! expectation value, and the fields acquire formal masses `√(3λ)·u` (σ) and
//! `√λ·u` (π).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default value of the (undetermined) positive constant in the shift scale.
pub const DEFAULT_C_T: f64 = 1.0;

/// Largest bare coupling accepted in the broken phase.
pub const MAX_BROKEN_COUPLING: f64 = 0.5;

/// Smallest accepted ratio of cutoff to mass scale.
pub const MIN_CUTOFF_RATIO: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Unbroken,
    Broken,
}

/// Parameters of the O(N) linear σ model with a single cutoff.
///
/// In the unbroken phase `mass` is the common field mass `m ≥ 0`; in the
/// broken phase it is `μ > 0` with `m² = −μ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldTheory {
    n_fields: u32,
    coupling: f64,
    mass: f64,
    phase: Phase,
    cutoff: f64,
}

impl FieldTheory {
    pub fn new(n_fields: u32, coupling: f64, mass: f64, phase: Phase, cutoff: f64) -> Result<Self> {
        if n_fields < 2 {
            return Err(Error::domain(format!("N must be at least 2, got {n_fields}")));
        }
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(Error::domain(format!("coupling λ must be positive, got {coupling}")));
        }
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::domain(format!("cutoff Λ must be positive, got {cutoff}")));
        }
        if !mass.is_finite() || mass < 0.0 {
            return Err(Error::domain(format!("mass must be finite and non-negative, got {mass}")));
        }
        if cutoff < MIN_CUTOFF_RATIO * mass {
            return Err(Error::domain(format!(
                "cutoff Λ = {cutoff} must be at least {MIN_CUTOFF_RATIO}× the mass scale {mass}"
            )));
        }
        if phase == Phase::Broken {
            if mass <= 0.0 {
                return Err(Error::domain("broken phase requires μ > 0"));
            }
            if coupling >= MAX_BROKEN_COUPLING {
                return Err(Error::domain(format!(
                    "broken phase requires λ ≪ 1 (λ < {MAX_BROKEN_COUPLING}), got {coupling}"
                )));
            }
        }
        Ok(FieldTheory { n_fields, coupling, mass, phase, cutoff })
    }

    pub fn unbroken(n_fields: u32, coupling: f64, mass: f64, cutoff: f64) -> Result<Self> {
        Self::new(n_fields, coupling, mass, Phase::Unbroken, cutoff)
    }

    pub fn broken(n_fields: u32, coupling: f64, mu: f64, cutoff: f64) -> Result<Self> {
        Self::new(n_fields, coupling, mu, Phase::Broken, cutoff)
    }

    pub fn n_fields(&self) -> u32 {
        self.n_fields
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Number of traced-out π fields, `N − 1`.
    pub fn traced_species(&self) -> u32 {
        self.n_fields - 1
    }

    /// Same model with a different cutoff, re-validated.
    pub fn with_cutoff(&self, cutoff: f64) -> Result<Self> {
        Self::new(self.n_fields, self.coupling, self.mass, self.phase, cutoff)
    }

    pub fn with_n_fields(&self, n_fields: u32) -> Result<Self> {
        Self::new(n_fields, self.coupling, self.mass, self.phase, self.cutoff)
    }

    /// Broken-phase expansion data for the given renormalised coupling.
    pub fn ssb_parameters(&self, lambda_u: f64, c_t: f64) -> Result<SsbParameters> {
        if self.phase != Phase::Broken {
            return Err(Error::domain("shift scale is only defined in the broken phase"));
        }
        SsbParameters::new(self, lambda_u, c_t)
    }
}

/// Shift scale, formal masses and vacuum expectation value of the broken phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SsbParameters {
    pub shift_scale: f64,
    pub m_sigma_eff: f64,
    pub m_pi_eff: f64,
    pub c_t: f64,
    pub vev: f64,
}

impl SsbParameters {
    fn new(model: &FieldTheory, lambda_u: f64, c_t: f64) -> Result<Self> {
        let shift_scale = ssb_shift_scale(lambda_u, model.n_fields, model.cutoff, c_t)?;
        let (m_sigma_eff, m_pi_eff) = effective_masses(lambda_u, shift_scale)?;
        Ok(SsbParameters {
            shift_scale,
            m_sigma_eff,
            m_pi_eff,
            c_t,
            vev: model.mass / model.coupling.sqrt(),
        })
    }
}

/// Integer Rényi index `α ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct RenyiIndex(u32);

impl RenyiIndex {
    pub fn new(alpha: u32) -> Result<Self> {
        if alpha < 2 {
            // α → 1 is not reachable from integer replicas at this order.
            return Err(Error::domain(format!("Rényi index must be an integer ≥ 2, got {alpha}")));
        }
        Ok(RenyiIndex(alpha))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The replica prefactor `α/(α−1)`.
    pub fn prefactor(self) -> f64 {
        let a = self.0 as f64;
        a / (a - 1.0)
    }
}

impl TryFrom<u32> for RenyiIndex {
    type Error = Error;

    fn try_from(alpha: u32) -> Result<Self> {
        RenyiIndex::new(alpha)
    }
}

impl From<RenyiIndex> for u32 {
    fn from(a: RenyiIndex) -> u32 {
        a.0
    }
}

/// Shift scale `u = Λ·√[C_t·(N−1) / ((N+8)·ln(1/λ_u))]`.
///
/// Requires `0 < λ_u < 1/e` so that `ln(1/λ_u) > 1`.
pub fn ssb_shift_scale(lambda_u: f64, n_fields: u32, cutoff: f64, c_t: f64) -> Result<f64> {
    if !(lambda_u > 0.0 && lambda_u < std::f64::consts::E.recip()) {
        return Err(Error::domain(format!(
            "λ_u must satisfy 0 < λ_u < 1/e ≈ 0.3679 for the shift-scale formula, got {lambda_u}"
        )));
    }
    if n_fields < 2 {
        return Err(Error::domain(format!("N must be at least 2, got {n_fields}")));
    }
    if !(c_t.is_finite() && c_t > 0.0) {
        return Err(Error::domain(format!("C_t must be positive, got {c_t}")));
    }
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(Error::domain(format!("cutoff Λ must be positive, got {cutoff}")));
    }
    let n = n_fields as f64;
    let log_inv = -lambda_u.ln();
    Ok(cutoff * (c_t * (n - 1.0) / ((n + 8.0) * log_inv)).sqrt())
}

/// Formal masses `(m̃_σ, m̃_π) = (√(3λ)·u, √λ·u)`.
pub fn effective_masses(coupling: f64, shift_scale: f64) -> Result<(f64, f64)> {
    if !(coupling.is_finite() && coupling > 0.0) {
        return Err(Error::domain(format!("coupling must be positive, got {coupling}")));
    }
    if !(shift_scale.is_finite() && shift_scale > 0.0) {
        return Err(Error::domain(format!("shift scale must be positive, got {shift_scale}")));
    }
    let m_pi = coupling.sqrt() * shift_scale;
    Ok((3f64.sqrt() * m_pi, m_pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn shift_scale_examples() {
        let u = ssb_shift_scale((-10f64).exp(), 2, 1.0, 1.0).unwrap();
        assert_relative_eq!(u, 0.1, max_relative = 1e-14);

        // mpmath, 40 digits
        let u = ssb_shift_scale(0.01, 4, 10.0, 1.0).unwrap();
        assert_relative_eq!(u, 2.329_953_008_923_280_4, max_relative = 1e-14);
    }

    #[test]
    fn shift_scale_rejects_large_coupling() {
        let e_inv = std::f64::consts::E.recip();
        for n in [2, 3, 10] {
            assert!(matches!(ssb_shift_scale(e_inv, n, 5.0, 1.0), Err(Error::Domain(_))));
        }
        assert!(ssb_shift_scale(1.0, 2, 1.0, 1.0).is_err());
        assert!(ssb_shift_scale(0.0, 2, 1.0, 1.0).is_err());
        assert!(ssb_shift_scale(0.01, 1, 1.0, 1.0).is_err());
        assert!(ssb_shift_scale(0.01, 2, 1.0, 0.0).is_err());
    }

    #[test]
    fn effective_mass_examples() {
        let (s, p) = effective_masses(1.0, 1.0).unwrap();
        assert_relative_eq!(s, 3f64.sqrt(), max_relative = 1e-15);
        assert_eq!(p, 1.0);

        let (s, p) = effective_masses(0.04, 5.0).unwrap();
        assert_relative_eq!(s, 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(p, 1.0, max_relative = 1e-15);

        let (s, p) = effective_masses(0.01, 2.0).unwrap();
        assert_relative_eq!(s, 0.346_410_161_513_775_46, max_relative = 1e-15);
        assert_relative_eq!(p, 0.2, max_relative = 1e-15);
    }

    #[test]
    fn model_validation() {
        assert!(FieldTheory::unbroken(1, 0.1, 1.0, 10.0).is_err());
        assert!(FieldTheory::unbroken(2, 0.0, 1.0, 10.0).is_err());
        assert!(FieldTheory::unbroken(2, 0.1, 1.0, 1.5).is_err());
        assert!(FieldTheory::unbroken(2, 0.1, 0.0, 1.0).is_ok());
        assert!(FieldTheory::broken(2, 0.5, 1.0, 10.0).is_err());
        assert!(FieldTheory::broken(2, 0.1, 0.0, 10.0).is_err());
        let m = FieldTheory::broken(4, 0.1, 1.0, 10.0).unwrap();
        assert_eq!(m.traced_species(), 3);
        assert!(FieldTheory::unbroken(2, 0.1, 1.0, 10.0)
            .unwrap()
            .ssb_parameters(0.01, 1.0)
            .is_err());
    }

    #[test]
    fn ssb_parameters_are_consistent() {
        let m = FieldTheory::broken(4, 0.04, 2.0, 20.0).unwrap();
        let p = m.ssb_parameters(0.01, 1.0).unwrap();
        assert_relative_eq!(p.vev, 10.0, max_relative = 1e-15);
        assert_relative_eq!(p.m_sigma_eff.powi(2), 3.0 * 0.01 * p.shift_scale.powi(2), max_relative = 1e-14);
        assert_relative_eq!(p.m_pi_eff.powi(2), 0.01 * p.shift_scale.powi(2), max_relative = 1e-14);
    }

    #[test]
    fn renyi_index() {
        assert!(RenyiIndex::new(1).is_err());
        assert!(RenyiIndex::new(0).is_err());
        assert_eq!(RenyiIndex::new(2).unwrap().prefactor(), 2.0);
        assert_eq!(RenyiIndex::new(3).unwrap().prefactor(), 1.5);
    }

    proptest! {
        #[test]
        fn mass_ratio_is_sqrt3(lambda in 1e-6f64..10.0, u in 1e-3f64..1e3) {
            let (s, p) = effective_masses(lambda, u).unwrap();
            prop_assert!((s / p - 3f64.sqrt()).abs() <= 4.0 * f64::EPSILON);
        }

        #[test]
        fn shift_scale_monotone(lambda in 1e-8f64..0.36, n in 2u32..50, c_t in 0.01f64..10.0) {
            let u = ssb_shift_scale(lambda, n, 1.0, c_t).unwrap();
            prop_assert!(u > 0.0 && u.is_finite());
            prop_assert!(ssb_shift_scale(lambda, n, 1.0, c_t * 1.1).unwrap() > u);
            prop_assert!(ssb_shift_scale(lambda, n + 1, 1.0, c_t).unwrap() > u);
            prop_assert!(ssb_shift_scale(lambda * 1.01, n, 1.0, c_t).unwrap() > u);
        }

        #[test]
        fn shift_scale_linear_in_cutoff(lambda in 1e-8f64..0.36, n in 2u32..50, c in 1e-3f64..1e3) {
            let u1 = ssb_shift_scale(lambda, n, 1.0, 1.0).unwrap();
            let uc = ssb_shift_scale(lambda, n, c, 1.0).unwrap();
            prop_assert!((uc - c * u1).abs() <= 1e-14 * uc);
        }
    }
}

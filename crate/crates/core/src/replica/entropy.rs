use super::diagram::{evaluate_diagram, DiagramSpec, EntropyResult};
use crate::error::{Error, Result};
use crate::model::{FieldTheory, Phase, RenyiIndex, MIN_CUTOFF_RATIO};

/// The `D K K` family: one σ line, two π lines.
pub fn cubic_diagram(coefficient: f64, species: u32, focused_mass: f64, traced_mass: f64, cutoff: f64) -> DiagramSpec {
    DiagramSpec {
        focused_lines: 1,
        traced_lines: 2,
        coefficient,
        species,
        focused_mass,
        traced_mass,
        regulator: cutoff,
    }
}

/// The `D D K K` family of the quartic vertex, coefficient `λ²/2` per traced
/// species, summed over the `N − 1` π fields.
pub fn quartic_diagram(n_fields: u32, coupling: f64, focused_mass: f64, traced_mass: f64, cutoff: f64) -> DiagramSpec {
    DiagramSpec {
        focused_lines: 2,
        traced_lines: 2,
        coefficient: 0.5 * coupling * coupling,
        species: n_fields.saturating_sub(1),
        focused_mass,
        traced_mass,
        regulator: cutoff,
    }
}

/// Single-σ, single-π model with cubic vertex `λ v σ π²`.
pub fn renyi_cubic(alpha: RenyiIndex, coupling: f64, vev: f64, mass: f64, cutoff: f64) -> Result<EntropyResult> {
    if !(coupling.is_finite() && coupling >= 0.0) {
        return Err(Error::domain(format!("coupling must be finite and ≥ 0, got {coupling}")));
    }
    if !vev.is_finite() {
        return Err(Error::domain(format!("vev must be finite, got {vev}")));
    }
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(Error::domain(format!("mass must be finite and ≥ 0, got {mass}")));
    }
    if !(cutoff.is_finite() && cutoff > 0.0 && cutoff >= MIN_CUTOFF_RATIO * mass) {
        return Err(Error::domain(format!(
            "cutoff Λ = {cutoff} must be positive and at least {MIN_CUTOFF_RATIO}·m = {}",
            MIN_CUTOFF_RATIO * mass
        )));
    }
    let d = cubic_diagram(coupling * coupling * vev * vev, 1, mass, mass, cutoff);
    Ok(EntropyResult::assemble(alpha, cutoff, vec![evaluate_diagram(&d, alpha)?]))
}

pub fn renyi_unbroken(alpha: RenyiIndex, model: &FieldTheory) -> Result<EntropyResult> {
    if model.phase() != Phase::Unbroken {
        return Err(Error::domain("renyi_unbroken needs a model in the unbroken phase"));
    }
    let d = quartic_diagram(model.n_fields(), model.coupling(), model.mass(), model.mass(), model.cutoff());
    Ok(EntropyResult::assemble(alpha, model.cutoff(), vec![evaluate_diagram(&d, alpha)?]))
}

fn ssb(alpha: RenyiIndex, model: &FieldTheory, lambda_u: f64, c_t: f64, dkk_species: u32) -> Result<EntropyResult> {
    if model.phase() != Phase::Broken {
        return Err(Error::domain("the broken-phase entropy needs a model in the broken phase"));
    }
    let params = model.ssb_parameters(lambda_u, c_t)?;
    let cutoff = model.cutoff();
    if params.m_sigma_eff >= cutoff {
        return Err(Error::domain(format!(
            "formal σ mass {} must stay below the cutoff {cutoff}",
            params.m_sigma_eff
        )));
    }
    let u = params.shift_scale;
    let (m_sigma, m_pi) = (params.m_sigma_eff, params.m_pi_eff);
    let ddkk = quartic_diagram(model.n_fields(), lambda_u, m_sigma, m_pi, cutoff);
    let dkk = cubic_diagram(lambda_u * lambda_u * u * u, dkk_species, m_sigma, m_pi, cutoff);
    Ok(EntropyResult::assemble(
        alpha,
        cutoff,
        vec![evaluate_diagram(&ddkk, alpha)?, evaluate_diagram(&dkk, alpha)?],
    ))
}

/// Broken phase, σ focused: `DDKK` plus the shifted-vertex `DKK`, each summed
/// over the `N − 1` π species.
pub fn renyi_ssb(alpha: RenyiIndex, model: &FieldTheory, lambda_u: f64, c_t: f64) -> Result<EntropyResult> {
    ssb(alpha, model, lambda_u, c_t, model.traced_species())
}

/// Broken phase with a single π field focused; the `DKK` group factor drops
/// by `N − 1`.
pub fn renyi_ssb_pi(alpha: RenyiIndex, model: &FieldTheory, lambda_u: f64, c_t: f64) -> Result<EntropyResult> {
    ssb(alpha, model, lambda_u, c_t, 1)
}

use serde::{Deserialize, Serialize};

use super::lattice::LatticeSpec;
use super::spectrum::renyi_field_entropy;
use crate::error::Result;
use crate::replica::log_log_fit;

/// Sweep parameters for [`perturbative_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbativeCheck {
    /// Small couplings for the order fit.
    pub couplings: Vec<f64>,
    /// Coupling at which `S₃/S₂` is read off.
    pub ratio_coupling: f64,
    pub sizes: Vec<usize>,
    pub volume_coupling: f64,
}

impl Default for PerturbativeCheck {
    fn default() -> Self {
        PerturbativeCheck {
            couplings: vec![0.02, 0.04, 0.08],
            ratio_coupling: 0.02,
            sizes: vec![8, 16, 32],
            volume_coupling: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbativeReport {
    pub alpha: u32,
    pub entropies: Vec<(f64, f64)>,
    pub exponent: f64,
    pub fit_residual: f64,
    pub ratio_s3_s2: f64,
    /// `(L, S/L^d)` at the volume coupling.
    pub per_site: Vec<(usize, f64)>,
    pub per_site_differences: Vec<f64>,
}

/// Order in `g`, replica ratio and extensivity of the exact entropy, for
/// the masses and lattice of `base`.
pub fn perturbative_check(base: &LatticeSpec, alpha: u32, check: &PerturbativeCheck) -> Result<PerturbativeReport> {
    let entropies = check
        .couplings
        .iter()
        .map(|&g| Ok((g, renyi_field_entropy(&base.with_coupling(g)?, alpha)?)))
        .collect::<Result<Vec<_>>>()?;
    let fit = log_log_fit(&entropies)?;

    let at_ratio = base.with_coupling(check.ratio_coupling)?;
    let ratio_s3_s2 = renyi_field_entropy(&at_ratio, 3)? / renyi_field_entropy(&at_ratio, 2)?;

    let per_site = check
        .sizes
        .iter()
        .map(|&l| {
            let spec = base.with_coupling(check.volume_coupling)?.with_sites(l)?;
            Ok((l, renyi_field_entropy(&spec, alpha)? / spec.volume() as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    let per_site_differences = per_site.windows(2).map(|w| (w[1].1 - w[0].1).abs()).collect();

    Ok(PerturbativeReport {
        alpha,
        entropies,
        exponent: fit.exponent,
        fit_residual: fit.residual,
        ratio_s3_s2,
        per_site,
        per_site_differences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweep() {
        let base = LatticeSpec::new(1, 32, 1.0, 1.0, 0.0).unwrap();
        let r = perturbative_check(&base, 2, &PerturbativeCheck::default()).unwrap();
        assert!((r.exponent - 2.0).abs() < 0.05, "{}", r.exponent);
        assert!((r.ratio_s3_s2 - 0.75).abs() < 0.02, "{}", r.ratio_s3_s2);
        let d = &r.per_site_differences;
        assert!(d.windows(2).all(|w| w[1] <= w[0]), "{d:?}");
    }
}

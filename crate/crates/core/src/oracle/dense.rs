//! Brute-force Gaussian-state computation on the full `2V × 2V` real-space
//! covariance, independent of the mode decomposition.

use nalgebra::{DMatrix, SymmetricEigen};

use super::lattice::{LatticeSpec, Subsystem};
use super::spectrum::SymplecticSpectrum;
use crate::error::{Error, Result};
use crate::model::RenyiIndex;

const MAX_DENSE_SITES: usize = 1024;

/// Ground-state `⟨x xᵀ⟩` and `⟨p pᵀ⟩` with `x = (φ₁…φ_V, χ₁…χ_V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseCovariance {
    pub x: DMatrix<f64>,
    pub p: DMatrix<f64>,
    pub volume: usize,
}

impl DenseCovariance {
    fn block(&self, subsystem: Subsystem) -> (DMatrix<f64>, DMatrix<f64>) {
        let start = match subsystem {
            Subsystem::Phi => 0,
            Subsystem::Chi => self.volume,
        };
        let v = self.volume;
        (
            self.x.view((start, start), (v, v)).into_owned(),
            self.p.view((start, start), (v, v)).into_owned(),
        )
    }
}

fn potential(spec: &LatticeSpec) -> DMatrix<f64> {
    let v = spec.volume();
    let l = spec.sites();
    let mut m = DMatrix::zeros(2 * v, 2 * v);
    for site in 0..v {
        let coords = spec.coords(site);
        for (offset, mass) in [(0, spec.mass_phi()), (v, spec.mass_chi())] {
            m[(offset + site, offset + site)] += 2.0 * spec.dims() as f64 + mass * mass;
            for axis in 0..spec.dims() as usize {
                for step in [1, l - 1] {
                    let mut c = coords.clone();
                    c[axis] = (c[axis] + step) % l;
                    let neighbour = c.iter().rev().fold(0, |acc, &ci| acc * l + ci);
                    m[(offset + site, offset + neighbour)] -= 1.0;
                }
            }
        }
        m[(site, v + site)] = spec.bilinear_g();
        m[(v + site, site)] = spec.bilinear_g();
    }
    m
}

fn matrix_power(eig: &SymmetricEigen<f64, nalgebra::Dyn>, p: f64) -> DMatrix<f64> {
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| e.powf(p)));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// `X = ½V^{-1/2}`, `P = ½V^{1/2}` from a dense eigendecomposition of the
/// potential matrix.
pub fn dense_covariance(spec: &LatticeSpec) -> Result<DenseCovariance> {
    let volume = spec.volume();
    if volume > MAX_DENSE_SITES {
        return Err(Error::domain(format!("dense path is limited to {MAX_DENSE_SITES} sites, got {volume}")));
    }
    let eig = SymmetricEigen::new(potential(spec));
    if let Some(min) = eig.eigenvalues.iter().copied().reduce(f64::min) {
        if min <= 0.0 {
            return Err(Error::Instability(format!("potential matrix has eigenvalue {min}")));
        }
    }
    Ok(DenseCovariance {
        x: 0.5 * matrix_power(&eig, -0.5),
        p: 0.5 * matrix_power(&eig, 0.5),
        volume,
    })
}

fn dense_spectrum(cov: &DenseCovariance, subsystem: Subsystem) -> Result<SymplecticSpectrum> {
    let (xa, pa) = cov.block(subsystem);
    let root = matrix_power(&SymmetricEigen::new(xa), 0.5);
    let product = &root * pa * &root;
    let sym = 0.5 * (&product + product.transpose());
    let nu: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().map(|e| e.max(0.0).sqrt()).collect();
    SymplecticSpectrum::from_values(nu)
}

pub fn dense_renyi_entropy(spec: &LatticeSpec, alpha: u32, subsystem: Subsystem) -> Result<f64> {
    let alpha = RenyiIndex::new(alpha)?;
    Ok(dense_spectrum(&dense_covariance(spec)?, subsystem)?.renyi(alpha))
}

/// `Tr ρ_A² = 1/√(det(2X_A)·det(2P_A))`.
pub fn dense_purity(spec: &LatticeSpec, subsystem: Subsystem) -> Result<f64> {
    let (xa, pa) = dense_covariance(spec)?.block(subsystem);
    Ok(1.0 / ((2.0 * xa).determinant() * (2.0 * pa).determinant()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{ground_state_covariance, renyi_field_entropy};

    #[test]
    fn moments_match_mode_space() {
        let spec = LatticeSpec::new(1, 4, 1.0, 1.0, 0.5).unwrap();
        let dense = dense_covariance(&spec).unwrap();
        let modes = ground_state_covariance(&spec).unwrap();
        assert_eq!(dense.x.nrows(), 8);
        for r in 0..4 {
            for (a, b, ro, co) in [
                (Subsystem::Phi, Subsystem::Phi, 0, 0),
                (Subsystem::Chi, Subsystem::Chi, 4, 4),
                (Subsystem::Phi, Subsystem::Chi, 0, 4),
            ] {
                let (x, p) = modes.correlator(a, b, &[r]);
                assert!((dense.x[(ro, co + r)] - x).abs() < 1e-13);
                assert!((dense.p[(ro, co + r)] - p).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn entropy_matches_mode_space() {
        for (dims, sites, m_phi, m_chi, g) in [(1, 8, 1.0, 1.0, 0.3), (1, 5, 0.6, 1.4, 0.5), (2, 4, 1.0, 0.8, 0.4), (3, 2, 1.0, 1.0, 0.2)] {
            let spec = LatticeSpec::new(dims, sites, m_phi, m_chi, g).unwrap();
            for alpha in [2, 3] {
                let modes = renyi_field_entropy(&spec, alpha).unwrap();
                for sub in [Subsystem::Phi, Subsystem::Chi] {
                    let dense = dense_renyi_entropy(&spec, alpha, sub).unwrap();
                    assert!((dense - modes).abs() < 1e-8 * modes, "{spec:?} α={alpha}: {dense} vs {modes}");
                }
            }
        }
    }

    #[test]
    fn purity_matches_second_renyi() {
        let spec = LatticeSpec::new(1, 8, 1.0, 1.0, 0.3).unwrap();
        let s2 = renyi_field_entropy(&spec, 2).unwrap();
        let purity = dense_purity(&spec, Subsystem::Phi).unwrap();
        assert!((-purity.ln() - s2).abs() < 1e-8 * s2);
    }
}

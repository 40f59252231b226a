//! Exact Rényi entropy between two bilinearly coupled free lattice fields.
//!
//! The Hamiltonian `½Σ(π_φ² + π_χ²) + ½φ(−Δ + m_φ²)φ + ½χ(−Δ + m_χ²)χ + gΣφχ`
//! on a periodic hypercubic lattice is diagonal in momentum space up to a
//! 2×2 rotation per mode, so the ground state and the reduced state of
//! either field are Gaussian and known in closed form.

mod dense;
mod lattice;
mod perturbative;
mod spectrum;

pub use dense::{dense_covariance, dense_purity, dense_renyi_entropy, DenseCovariance};
pub use lattice::{ground_state_covariance, CovarianceData, LatticeSpec, ModeMoments, Subsystem};
pub use perturbative::{perturbative_check, PerturbativeCheck, PerturbativeReport};
pub use spectrum::{renyi_field_entropy, renyi_subsystem_entropy, symplectic_spectrum, SymplecticSpectrum};

//! Rényi entanglement entropy between interacting scalar quantum fields.
//!
//! The O(λ²) entropy of a focused field is a sum of two-vertex vacuum
//! diagrams integrated over discordant half-spaces of Euclidean time. The
//! crate evaluates those integrals with Pauli-Villars regulated propagators
//! for the cubic two-field model and the linear σ model in both phases,
//! cross-checks them in momentum space, and provides an exactly solvable
//! Gaussian lattice model as an independent, non-perturbative oracle.
//!
//! Modules:
//! - [`model`]: parameters, broken-phase shift scale and formal masses;
//! - [`propagators`]: position and momentum space propagators;
//! - [`quad`]: radial quadrature and seeded Monte Carlo engines;
//! - [`replica`]: diagram selection and entropy assembly;
//! - [`oracle`]: Gaussian lattice entropies;
//! - [`cli`]: command-line front end.

pub mod bessel;
pub mod cli;
pub mod error;
pub mod model;
pub mod oracle;
pub mod propagators;
pub mod quad;
pub mod replica;

pub use error::{Error, Result};
pub use model::{effective_masses, ssb_shift_scale, FieldTheory, Phase, RenyiIndex, SsbParameters};
pub use propagators::{momentum_propagator, position_propagator, pv_position_propagator, RegulatedPropagator};

//! Replica-manifold bookkeeping and assembly of the O(λ²) Rényi entropy.
//!
//! On the replicated manifold a two-vertex diagram contributes to
//! `α·W₁ − W_α` only if both the focused and a traced field propagate
//! between its vertices; what survives is the vertex pair integrated over
//! discordant half-spaces (`τ_x > 0, τ_y < 0` and the mirror ordering).
//! Per unit spatial volume that double integral reduces to
//! `(8π/3)·∫₀^∞ ds s⁴ Π P_i(s)`, which [`discordant_integral`] evaluates.

mod diagram;
mod entropy;
mod fit;
mod halfspace;
mod momentum;

pub use diagram::{diagram_survives, evaluate_diagram, Contribution, DiagramSpec, EntropyResult};
pub use entropy::{cubic_diagram, quartic_diagram, renyi_cubic, renyi_ssb, renyi_ssb_pi, renyi_unbroken};
pub use fit::{fit_power_law, log_log_fit, PowerLawFit};
pub use halfspace::{
    discordant_integral, discordant_integral_with, radial_integrand, short_range_fraction, Line,
    HALFSPACE_FACTOR,
};
pub use momentum::{momentum_space_integral, xcheck_momentum, xcheck_momentum_with, XCHECK_DEFAULT_TOLERANCE};

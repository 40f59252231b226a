use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the region where the computation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("propagator singularity: k² + m² = 0")]
    Singularity,

    #[error("divergent integral: {0}")]
    Divergence(String),

    #[error("quadrature did not converge: estimate {value:e} ± {error:e} after {evaluations} evaluations")]
    NonConvergence {
        value: f64,
        error: f64,
        evaluations: usize,
    },

    /// Monte Carlo budget exhausted above the requested relative error.
    #[error("statistical precision not reached: {value:e} ± {error:e} (target relative error {target:e})")]
    Precision { value: f64, error: f64, target: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("unstable lattice: {0}")]
    Instability(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Domain(_) | Error::Singularity | Error::Instability(_) | Error::DegenerateFit(_) => 3,
            Error::Divergence(_) | Error::NonConvergence { .. } | Error::Precision { .. } => 4,
        }
    }
}

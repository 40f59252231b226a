use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::QuadratureResult;
use crate::error::{Error, Result};

/// Samples per independent random stream. Fixed, so the partition of the
/// budget never depends on the thread pool.
pub const BATCH_SIZE: u64 = 4096;

pub const DEFAULT_MC_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Relative standard error above which the estimate is rejected.
    pub rel_tolerance: Option<f64>,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig { samples, seed, rel_tolerance: Some(DEFAULT_MC_TOLERANCE) }
    }

    pub fn with_tolerance(mut self, rel_tolerance: Option<f64>) -> Self {
        self.rel_tolerance = rel_tolerance;
        self
    }
}

/// Plain Monte Carlo mean of `sample(rng)` over `cfg.samples` draws.
///
/// Batch `i` draws from ChaCha8 stream `i` of `cfg.seed` and the batch sums
/// are reduced in batch order, so results are bitwise identical across
/// thread counts.
pub fn mc_integrate<F>(cfg: &McConfig, sample: F) -> Result<QuadratureResult>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if cfg.samples < 2 {
        return Err(Error::domain("Monte Carlo needs at least two samples"));
    }
    let batches = cfg.samples.div_ceil(BATCH_SIZE);
    let partial: Vec<(f64, f64, bool)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(b);
            let n = BATCH_SIZE.min(cfg.samples - b * BATCH_SIZE);
            let (mut sum, mut sq, mut finite) = (0.0, 0.0, true);
            for _ in 0..n {
                let w = sample(&mut rng);
                finite &= w.is_finite();
                sum += w;
                sq += w * w;
            }
            (sum, sq, finite)
        })
        .collect();

    let (mut sum, mut sq) = (0.0, 0.0);
    for (s, q, finite) in partial {
        if !finite {
            return Err(Error::domain("Monte Carlo integrand produced a non-finite weight"));
        }
        sum += s;
        sq += q;
    }
    let n = cfg.samples as f64;
    let mean = sum / n;
    let var = ((sq / n - mean * mean) * n / (n - 1.0)).max(0.0);
    let error = (var / n).sqrt();
    let result = QuadratureResult {
        value: mean,
        error,
        evaluations: cfg.samples as usize,
        converged: true,
    };
    match cfg.rel_tolerance {
        Some(target) if error > target * mean.abs() => Err(Error::Precision { value: mean, error, target }),
        _ => Ok(result),
    }
}

/// Draws a point uniformly on the unit 3-sphere in R⁴.
pub(crate) fn unit_4vector<R: Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.map(|c| c / norm);
        }
    }
}

/// Both discordant orderings of the half-space pair,
/// `∫_{τx>0}d⁴x ∫_{τy<0}d⁴y f + ∫_{τx<0}d⁴x ∫_{τy>0}d⁴y f`, per unit
/// spatial volume.
///
/// The integrand must depend on `x⃗ − y⃗` only; the spatial position of `x`
/// is pinned to the origin. Pairs are drawn through the separation
/// `r = x − y`: isotropic direction, `ln|r|` logistic about
/// `ln(sampler_scale)` with unit scale, then `τ_x` uniform over the
/// `|r₀|`-long interval that keeps the two points on opposite sides.
pub fn mc_halfspaces<F>(integrand: F, sampler_scale: f64, cfg: &McConfig) -> Result<QuadratureResult>
where
    F: Fn(&[f64; 4], &[f64; 4]) -> f64 + Sync,
{
    if !(sampler_scale.is_finite() && sampler_scale > 0.0) {
        return Err(Error::domain(format!("sampler scale must be positive, got {sampler_scale}")));
    }
    let centre = sampler_scale.ln();
    mc_integrate(cfg, |rng| {
        let dir = unit_4vector(rng);
        let u: f64 = rng.random();
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let z: f64 = (u / (1.0 - u)).ln();
        let s = (centre + z).exp();
        if s == 0.0 || !s.is_finite() {
            return 0.0;
        }
        // logistic density in ln s
        let density_log = (-z.abs()).exp() / (1.0 + (-z.abs()).exp()).powi(2);
        let r = dir.map(|c| c * s);

        let t: f64 = rng.random();
        let tau_x = t * r[0];
        let x = [tau_x, 0.0, 0.0, 0.0];
        let y = [tau_x - r[0], -r[1], -r[2], -r[3]];
        let f = integrand(&x, &y);
        if f == 0.0 {
            return 0.0;
        }
        f * r[0].abs() * 2.0 * PI * PI * s.powi(4) / density_log
    })
}

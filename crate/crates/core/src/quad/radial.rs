use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use super::{GaussLegendre, QuadratureResult};
use crate::error::{Error, Result};

pub const DEFAULT_RADIAL_TOLERANCE: f64 = 1e-8;

/// Parts of the tail below this fraction of the peak are dropped.
const TAIL_CUTOFF: f64 = 1e-16;
/// Half-width, in `ln s`, of the window scanned for the integrand's support.
const SCAN_HALF_WIDTH: f64 = 46.0;
const SCAN_STEP: f64 = 0.25;
const INITIAL_WIDTH: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOptions {
    /// Relative tolerance, within `[1e-12, 1e-2]`.
    pub tolerance: f64,
    /// Length scale around which the support is searched.
    pub scale_hint: f64,
    pub max_intervals: usize,
}

impl Default for RadialOptions {
    fn default() -> Self {
        RadialOptions {
            tolerance: DEFAULT_RADIAL_TOLERANCE,
            scale_hint: 1.0,
            max_intervals: 20_000,
        }
    }
}

fn rules() -> &'static (GaussLegendre, GaussLegendre) {
    static RULES: OnceLock<(GaussLegendre, GaussLegendre)> = OnceLock::new();
    RULES.get_or_init(|| (GaussLegendre::new(8), GaussLegendre::new(16)))
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `∫_lower^∞ f(s) ds` with the default options.
pub fn adaptive_radial<F: Fn(f64) -> f64>(
    integrand: F,
    lower: f64,
    tolerance: f64,
) -> Result<QuadratureResult> {
    let opts = RadialOptions { tolerance, ..RadialOptions::default() };
    adaptive_radial_with(integrand, lower, &opts)
}

/// `∫_lower^∞ f(s) ds` by globally adaptive Gauss-Legendre (8/16 point
/// pairs) in the variable `y = ln s`.
///
/// Power-law behaviour at either end becomes exponential decay in `y`, so
/// the support is located by a coarse scan and truncated where the
/// integrand falls below `1e-16` of its peak. The scan has a resolution of
/// `0.25` in `ln s`; features narrower than that may be missed.
pub fn adaptive_radial_with<F: Fn(f64) -> f64>(
    integrand: F,
    lower: f64,
    opts: &RadialOptions,
) -> Result<QuadratureResult> {
    if !(1e-12..=1e-2).contains(&opts.tolerance) {
        return Err(Error::domain(format!(
            "radial tolerance must lie in [1e-12, 1e-2], got {}",
            opts.tolerance
        )));
    }
    if !(lower.is_finite() && lower >= 0.0) {
        return Err(Error::domain(format!("lower limit must be finite and ≥ 0, got {lower}")));
    }
    if !(opts.scale_hint.is_finite() && opts.scale_hint > 0.0) {
        return Err(Error::domain("scale hint must be positive"));
    }

    let h = |y: f64| {
        let s = y.exp();
        integrand(s) * s
    };

    let centre = opts.scale_hint.ln();
    let (y_start, bounded_below) = if lower > 0.0 {
        (lower.ln(), true)
    } else {
        (centre - SCAN_HALF_WIDTH, false)
    };
    let y_end = (centre + SCAN_HALF_WIDTH).max(y_start + 2.0 * SCAN_HALF_WIDTH);

    let steps = ((y_end - y_start) / SCAN_STEP).ceil() as usize;
    let mut scan = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let y = y_start + i as f64 * SCAN_STEP;
        let v = h(y);
        if !v.is_finite() {
            return Err(Error::domain(format!("integrand is not finite at s = {:e}", y.exp())));
        }
        scan.push((y, v));
    }
    let mut evaluations = scan.len();

    let peak = scan.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(QuadratureResult { value: 0.0, error: 0.0, evaluations, converged: true });
    }
    let threshold = TAIL_CUTOFF * peak;
    let first = scan.iter().position(|(_, v)| v.abs() > threshold).unwrap();
    let last = scan.iter().rposition(|(_, v)| v.abs() > threshold).unwrap();
    if last == scan.len() - 1 || (first == 0 && !bounded_below) {
        return Err(Error::NonConvergence {
            value: f64::NAN,
            error: f64::INFINITY,
            evaluations,
        });
    }
    let lo = if bounded_below { y_start } else { scan[first - 1].0 };
    let hi = scan[last + 1].0;

    let (low_rule, high_rule) = rules();
    let per_interval = low_rule.len() + high_rule.len();
    let eval_interval = |a: f64, b: f64| {
        let coarse = low_rule.integrate(a, b, h);
        let fine = high_rule.integrate(a, b, h);
        Interval { a, b, value: fine, error: (fine - coarse).abs() }
    };

    let pieces = ((hi - lo) / INITIAL_WIDTH).ceil().max(1.0) as usize;
    let width = (hi - lo) / pieces as f64;
    let mut heap = BinaryHeap::with_capacity(pieces * 2);
    for i in 0..pieces {
        let a = lo + i as f64 * width;
        let b = if i + 1 == pieces { hi } else { a + width };
        heap.push(eval_interval(a, b));
        evaluations += per_interval;
    }

    loop {
        let (value, error, l1) = heap.iter().fold((0.0, 0.0, 0.0), |(v, e, l), iv| {
            (v + iv.value, e + iv.error, l + iv.value.abs())
        });
        if !value.is_finite() {
            return Err(Error::domain("integrand produced a non-finite integral"));
        }
        let floor = 1e-14 * l1;
        if error <= opts.tolerance * value.abs() || error <= floor {
            return Ok(QuadratureResult { value, error, evaluations, converged: true });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::NonConvergence { value, error, evaluations });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(eval_interval(worst.a, mid));
        heap.push(eval_interval(mid, worst.b));
        evaluations += 2 * per_interval;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_five() {
        let r = adaptive_radial(|s| s.powi(4) * (-s).exp(), 0.0, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - 24.0).abs() < 1e-10 * 24.0, "{}", r.value);
        assert!(r.error <= 1e-12 * 24.0 + 1e-14 * 24.0);
    }

    #[test]
    fn windowed_constant_integrand() {
        // s⁴·[1/(4π²s²)]² is constant; restrict it to the window [a, b].
        let (a, b) = (0.5, 3.0);
        let f = |s: f64| {
            if s < b {
                s.powi(4) * (1.0 / (4.0 * PI * PI * s * s)).powi(2)
            } else {
                0.0
            }
        };
        let opts = RadialOptions { tolerance: 1e-10, ..RadialOptions::default() };
        let r = adaptive_radial_with(f, a, &opts).unwrap();
        let want = (b - a) / (16.0 * PI.powi(4));
        // the jump at b limits what the 8/16 pair can certify
        assert!((r.value - want).abs() < 1e-7 * want, "{} vs {want}", r.value);
    }

    #[test]
    fn lower_limit_is_respected() {
        let r = adaptive_radial(|s| (-s).exp(), 2.0, 1e-12).unwrap();
        assert!((r.value - (-2f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn power_law_tail() {
        // ∫₀^∞ s²/(1+s²)³ ds = π/16
        let r = adaptive_radial(|s| s * s / (1.0 + s * s).powi(3), 0.0, 1e-11).unwrap();
        assert!((r.value - PI / 16.0).abs() < 1e-11);
    }

    #[test]
    fn zero_integrand() {
        let r = adaptive_radial(|_| 0.0, 0.0, 1e-8).unwrap();
        assert_eq!((r.value, r.error), (0.0, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(adaptive_radial(|s| (-s).exp(), 0.0, 1e-13).is_err());
        assert!(adaptive_radial(|s| (-s).exp(), 0.0, 0.1).is_err());
        assert!(adaptive_radial(|s| (-s).exp(), -1.0, 1e-8).is_err());
        assert!(adaptive_radial(|s| 1.0 / (s - 1.0), 0.0, 1e-8).is_err());
    }

    #[test]
    fn non_decaying_integrand_fails() {
        let r = adaptive_radial(|_| 1.0, 0.0, 1e-8);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn evaluation_budget() {
        let opts = RadialOptions { tolerance: 1e-12, max_intervals: 4, ..RadialOptions::default() };
        let r = adaptive_radial_with(|s| (10.0 * s).sin().abs() * (-s).exp(), 0.0, &opts);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}

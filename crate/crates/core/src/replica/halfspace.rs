use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagators::{position_unchecked, pv_unchecked, RegulatedPropagator};
use crate::quad::{adaptive_radial_with, QuadratureResult, RadialOptions};

/// `2 × 4π/3`: the two discordant orderings, each contributing the
/// `|r₀|`-weighted half of the 3-sphere, `∫ dΩ₃ cos θ = 4π/3`.
pub const HALFSPACE_FACTOR: f64 = 8.0 * PI / 3.0;

/// A propagator line between the two vertices; `regulator: None` leaves it
/// unregulated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub mass: f64,
    pub regulator: Option<f64>,
}

impl Line {
    pub fn regulated(mass: f64, regulator: f64) -> Self {
        Line { mass, regulator: Some(regulator) }
    }

    pub fn bare(mass: f64) -> Self {
        Line { mass, regulator: None }
    }

    fn eval(&self, s: f64) -> f64 {
        match self.regulator {
            Some(l) => pv_unchecked(s, self.mass, l),
            None => position_unchecked(s, self.mass),
        }
    }
}

impl From<RegulatedPropagator> for Line {
    fn from(p: RegulatedPropagator) -> Self {
        Line::regulated(p.physical_mass(), p.regulator_mass())
    }
}

/// Distinct lines with their multiplicities, so each propagator is
/// evaluated once per radius.
fn group(lines: &[Line]) -> Vec<(Line, i32)> {
    let mut out: Vec<(Line, i32)> = Vec::new();
    for l in lines {
        match out.iter_mut().find(|(g, _)| g == l) {
            Some((_, n)) => *n += 1,
            None => out.push((*l, 1)),
        }
    }
    out
}

fn validate(lines: &[Line]) -> Result<()> {
    if lines.len() < 2 {
        return Err(Error::domain(format!(
            "a two-vertex diagram needs at least two lines, got {}",
            lines.len()
        )));
    }
    for l in lines {
        if !(l.mass.is_finite() && l.mass >= 0.0) {
            return Err(Error::domain(format!("line mass must be finite and ≥ 0, got {}", l.mass)));
        }
        if let Some(reg) = l.regulator {
            RegulatedPropagator::new(l.mass, reg)?;
        }
    }
    let bare = lines.iter().filter(|l| l.regulator.is_none()).count();
    if bare >= 3 {
        return Err(Error::Divergence(format!(
            "{bare} unregulated lines make s⁴·ΠP ~ s^{} non-integrable at s → 0",
            4 - 2 * bare as i32
        )));
    }
    if lines.len() <= 2 && lines.iter().all(|l| l.mass == 0.0) {
        return Err(Error::Divergence(
            "two massless lines leave s⁴·ΠP → const as s → ∞".to_string(),
        ));
    }
    Ok(())
}

/// The radial integrand `s ↦ s⁴·Π P_i(s)` (without the half-space factor).
pub fn radial_integrand(lines: &[Line]) -> impl Fn(f64) -> f64 {
    let groups = group(lines);
    move |s: f64| {
        let mut acc = s.powi(4);
        for (line, n) in &groups {
            acc *= line.eval(s).powi(*n);
        }
        acc
    }
}

fn radial_options(cutoff_hint: f64, tolerance: f64) -> Result<RadialOptions> {
    if !(cutoff_hint.is_finite() && cutoff_hint > 0.0) {
        return Err(Error::domain(format!("cutoff hint must be positive, got {cutoff_hint}")));
    }
    Ok(RadialOptions { tolerance, scale_hint: 1.0 / cutoff_hint, ..RadialOptions::default() })
}

/// Both discordant half-space orderings of `Π P_i(|x − y|)` per unit
/// spatial volume, with the default radial tolerance.
pub fn discordant_integral(lines: &[Line], cutoff_hint: f64) -> Result<QuadratureResult> {
    discordant_integral_with(lines, cutoff_hint, crate::quad::DEFAULT_RADIAL_TOLERANCE)
}

pub fn discordant_integral_with(lines: &[Line], cutoff_hint: f64, tolerance: f64) -> Result<QuadratureResult> {
    validate(lines)?;
    let opts = radial_options(cutoff_hint, tolerance)?;
    let r = adaptive_radial_with(radial_integrand(lines), 0.0, &opts)?;
    Ok(QuadratureResult {
        value: HALFSPACE_FACTOR * r.value,
        error: HALFSPACE_FACTOR * r.error,
        ..r
    })
}

/// Fraction of the radial integral coming from separations `s > range`.
pub fn short_range_fraction(lines: &[Line], cutoff: f64, range: f64) -> Result<f64> {
    if !(range.is_finite() && range > 0.0) {
        return Err(Error::domain(format!("range must be positive, got {range}")));
    }
    validate(lines)?;
    let opts = radial_options(cutoff, 1e-10)?;
    let f = radial_integrand(lines);
    let total = adaptive_radial_with(&f, 0.0, &opts)?;
    let tail = adaptive_radial_with(&f, range, &opts)?;
    if total.value == 0.0 {
        return Ok(0.0);
    }
    Ok((tail.value / total.value).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{mc_halfspaces, McConfig};

    fn quartic(m: f64, l: f64) -> Vec<Line> {
        vec![Line::regulated(m, l); 4]
    }

    /// Composite trapezoid in `y = ln s`; spectrally accurate for integrands
    /// analytic in `y` that decay exponentially at both ends.
    fn trapezoid_log(f: impl Fn(f64) -> f64, y_lo: f64, y_hi: f64, h: f64) -> f64 {
        let n = ((y_hi - y_lo) / h).round() as usize;
        let h = (y_hi - y_lo) / n as f64;
        let mut sum = 0.0;
        for i in 0..=n {
            let y = y_lo + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            sum += w * f(y.exp()) * y.exp();
        }
        sum * h
    }

    #[test]
    fn ddkk_matches_fixed_reference_rule() {
        let lines = quartic(1.0, 20.0);
        let adaptive = discordant_integral_with(&lines, 20.0, 1e-11).unwrap();
        let reference = HALFSPACE_FACTOR * trapezoid_log(radial_integrand(&lines), -25.0, 8.0, 0.004);
        assert!(
            (adaptive.value - reference).abs() < 1e-8 * reference,
            "{} vs {reference}",
            adaptive.value
        );
    }

    #[test]
    fn matches_halfspace_monte_carlo() {
        for (lines, hint) in [
            (vec![Line::regulated(1.0, 10.0); 2], 10.0),
            (vec![Line::regulated(1.0, 20.0), Line::regulated(1.0, 20.0), Line::regulated(1.0, 20.0)], 20.0),
            (quartic(1.0, 20.0), 20.0),
        ] {
            let radial = discordant_integral(&lines, hint).unwrap();
            let f = radial_integrand(&lines);
            let integrand = |x: &[f64; 4], y: &[f64; 4]| {
                let s = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                f(s) / s.powi(4)
            };
            let cfg = McConfig::new(400_000, 17).with_tolerance(Some(0.05));
            let mc = mc_halfspaces(integrand, 1.0 / hint, &cfg).unwrap();
            assert!(
                (mc.value - radial.value).abs() < 3.0 * (mc.error + radial.error),
                "L={}: mc {} ± {} vs radial {}",
                lines.len(),
                mc.value,
                mc.error,
                radial.value
            );
        }
    }

    #[test]
    fn positive_for_assorted_lines() {
        let sets = [
            vec![Line::regulated(0.0, 5.0); 3],
            vec![Line::regulated(2.0, 5.0), Line::regulated(0.3, 5.0)],
            vec![Line::regulated(1.0, 30.0), Line::bare(1.0), Line::regulated(0.5, 30.0)],
            quartic(0.0, 1.0),
        ];
        for lines in sets {
            assert!(discordant_integral(&lines, 5.0).unwrap().value > 0.0);
        }
    }

    #[test]
    fn dimensional_rescaling() {
        for n in [2usize, 3, 4] {
            let base: Vec<Line> = (0..n).map(|i| Line::regulated(0.5 + 0.25 * i as f64, 12.0)).collect();
            let v1 = discordant_integral(&base, 12.0).unwrap().value;
            for c in [2.0, 0.5, 3.0] {
                let scaled: Vec<Line> = base
                    .iter()
                    .map(|l| Line::regulated(c * l.mass, c * l.regulator.unwrap()))
                    .collect();
                let vc = discordant_integral(&scaled, 12.0 * c).unwrap().value;
                let want = v1 * c.powi(2 * n as i32 - 5);
                assert!((vc - want).abs() < 1e-8 * want, "L={n} c={c}: {vc} vs {want}");
            }
        }
    }

    #[test]
    fn divergent_line_sets() {
        let massless_pair = vec![Line::regulated(0.0, 10.0); 2];
        assert!(matches!(discordant_integral(&massless_pair, 10.0), Err(Error::Divergence(_))));
        let bare = vec![Line::bare(1.0); 3];
        assert!(matches!(discordant_integral(&bare, 10.0), Err(Error::Divergence(_))));
        // two bare massive lines are integrable
        assert!(discordant_integral(&[Line::bare(1.0), Line::bare(1.0)], 1.0).is_ok());
        assert!(discordant_integral(&[Line::regulated(1.0, 10.0)], 10.0).is_err());
        assert!(discordant_integral(&[Line::regulated(1.0, 1.0); 2], 10.0).is_err());
    }

    #[test]
    fn short_range_fraction_limits() {
        let lines = quartic(1.0, 20.0);
        let near_zero = short_range_fraction(&lines, 20.0, 1e-9).unwrap();
        assert!((near_zero - 1.0).abs() < 1e-8);
        let at_cutoff = short_range_fraction(&lines, 20.0, 1.0 / 20.0).unwrap();
        let at_mass = short_range_fraction(&lines, 20.0, 1.0).unwrap();
        assert!(at_mass < 0.01 * at_cutoff);
        assert!(short_range_fraction(&lines, 20.0, 0.0).is_err());
    }
}

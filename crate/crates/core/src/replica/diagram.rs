use serde::{Deserialize, Serialize};

use super::halfspace::{discordant_integral, Line};
use crate::error::{Error, Result};
use crate::model::RenyiIndex;

/// A two-vertex diagram: `focused_lines` σ propagators and `traced_lines`
/// π propagators joining the vertices.
///
/// `species` counts identical traced species summed over; it multiplies the
/// assembled value last, so results for different `N` differ by exactly that
/// integer factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub focused_lines: u32,
    pub traced_lines: u32,
    pub coefficient: f64,
    pub species: u32,
    pub focused_mass: f64,
    pub traced_mass: f64,
    pub regulator: f64,
}

impl DiagramSpec {
    pub fn validate(&self) -> Result<()> {
        if self.focused_lines + self.traced_lines < 2 {
            return Err(Error::domain(format!(
                "a connected two-vertex diagram needs at least two lines, got {}",
                self.focused_lines + self.traced_lines
            )));
        }
        if !self.coefficient.is_finite() {
            return Err(Error::domain("diagram coefficient must be finite"));
        }
        Ok(())
    }

    /// `D` for each focused line followed by `K` for each traced line.
    pub fn label(&self) -> String {
        "D".repeat(self.focused_lines as usize) + &"K".repeat(self.traced_lines as usize)
    }

    pub fn lines(&self) -> Vec<Line> {
        let focused = std::iter::repeat_n(Line::regulated(self.focused_mass, self.regulator), self.focused_lines as usize);
        let traced = std::iter::repeat_n(Line::regulated(self.traced_mass, self.regulator), self.traced_lines as usize);
        focused.chain(traced).collect()
    }
}

/// Whether the diagram can contribute to `α·W₁ − W_α`: both species must
/// propagate between the vertices, otherwise the replicated and single-copy
/// terms coincide.
pub fn diagram_survives(d: &DiagramSpec) -> bool {
    d.focused_lines >= 1 && d.traced_lines >= 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub label: String,
    pub value: f64,
    pub error: f64,
}

/// Entropy per unit spatial volume at second order in the coupling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub value_per_volume: f64,
    pub error: f64,
    pub alpha: RenyiIndex,
    pub contributions: Vec<Contribution>,
    pub cutoff: f64,
}

impl EntropyResult {
    pub(crate) fn assemble(alpha: RenyiIndex, cutoff: f64, contributions: Vec<Contribution>) -> Self {
        let value_per_volume = contributions.iter().map(|c| c.value).sum();
        let error = contributions.iter().map(|c| c.error).sum();
        EntropyResult { value_per_volume, error, alpha, contributions, cutoff }
    }

    pub fn contribution(&self, label: &str) -> Option<f64> {
        self.contributions.iter().find(|c| c.label == label).map(|c| c.value)
    }
}

/// `species · coefficient · α/(α−1) · I[lines]`, or exactly zero for a
/// diagram that cancels between the replicated and single-copy terms.
pub fn evaluate_diagram(d: &DiagramSpec, alpha: RenyiIndex) -> Result<Contribution> {
    d.validate()?;
    let label = d.label();
    if !diagram_survives(d) || d.coefficient == 0.0 || d.species == 0 {
        return Ok(Contribution { label, value: 0.0, error: 0.0 });
    }
    let integral = discordant_integral(&d.lines(), d.regulator)?;
    let scale = d.coefficient * alpha.prefactor();
    let species = d.species as f64;
    Ok(Contribution {
        label,
        value: species * (scale * integral.value),
        error: species * (scale.abs() * integral.error),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(focused: u32, traced: u32) -> DiagramSpec {
        DiagramSpec {
            focused_lines: focused,
            traced_lines: traced,
            coefficient: 0.01,
            species: 1,
            focused_mass: 1.0,
            traced_mass: 1.0,
            regulator: 20.0,
        }
    }

    #[test]
    fn survival_examples() {
        assert!(diagram_survives(&spec(1, 2)));
        assert!(diagram_survives(&spec(2, 2)));
        assert!(!diagram_survives(&spec(3, 0)));
        assert!(!diagram_survives(&spec(0, 2)));
    }

    #[test]
    fn labels() {
        assert_eq!(spec(1, 2).label(), "DKK");
        assert_eq!(spec(2, 2).label(), "DDKK");
        assert_eq!(spec(2, 2).lines().len(), 4);
    }

    #[test]
    fn invalid_diagrams() {
        assert!(spec(1, 0).validate().is_err());
        assert!(DiagramSpec { coefficient: f64::NAN, ..spec(1, 2) }.validate().is_err());
    }

    proptest! {
        #[test]
        fn single_species_diagrams_vanish(n in 2u32..6, focused in any::<bool>(), alpha in 2u32..8) {
            let d = if focused { spec(n, 0) } else { spec(0, n) };
            let c = evaluate_diagram(&d, RenyiIndex::new(alpha).unwrap()).unwrap();
            prop_assert_eq!(c.value, 0.0);
            prop_assert_eq!(c.error, 0.0);
        }
    }
}

//! Wire formats: the settings input file and the JSON reports.

use serde::{Deserialize, Serialize};

use bellviol::{BellSpec, MeasurementSettings, PairingPattern, Sign, SpectralReport};

use crate::CliError;

/// Settings file:
/// `{"n": 3, "phi": [...], "phi_prime": [...], "signs": [...], "pairing": [...]}`
/// with `signs`, `pairing`, and `delta_primed` optional.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingsFile {
    pub n: usize,
    pub phi: Vec<f64>,
    pub phi_prime: Vec<f64>,
    #[serde(default)]
    pub signs: Option<[i8; 4]>,
    #[serde(default)]
    pub pairing: Option<Vec<String>>,
    #[serde(default)]
    pub delta_primed: Option<Vec<bool>>,
}

impl SettingsFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("settings JSON: {e}")))
    }

    pub fn to_spec(&self, degrees: bool) -> Result<BellSpec, CliError> {
        if self.phi.len() != self.n || self.phi_prime.len() != self.n {
            return Err(CliError::Usage(format!(
                "expected {} angles in phi and phi_prime, got {} and {}",
                self.n,
                self.phi.len(),
                self.phi_prime.len()
            )));
        }
        let convert = |v: &[f64]| -> Vec<f64> {
            if degrees {
                v.iter().map(|a| a.to_radians()).collect()
            } else {
                v.to_vec()
            }
        };
        let settings = MeasurementSettings::new(&convert(&self.phi), &convert(&self.phi_prime))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let signs = match self.signs {
            None => [Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus],
            Some(raw) => {
                let mut signs = [Sign::Plus; 4];
                for (s, r) in signs.iter_mut().zip(raw) {
                    *s = Sign::from_i8(r).map_err(|e| CliError::Usage(e.to_string()))?;
                }
                signs
            }
        };
        let pairing = match &self.pairing {
            None => BellSpec::default_pairing(self.n),
            Some(names) => names
                .iter()
                .map(|s| PairingPattern::from_name(s))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(e.to_string()))?,
        };
        BellSpec::new(settings, signs, pairing, self.delta_primed.clone())
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Whether this is the plain three-particle structure for which the
    /// closed-form largest-eigenvalue prediction applies.
    pub fn is_standard3(&self) -> bool {
        self.n == 3
            && self.signs.is_none_or(|s| s == [1, 1, 1, -1])
            && self
                .pairing
                .as_ref()
                .is_none_or(|p| p == &["P3", "P2", "P1"])
            && self
                .delta_primed
                .as_ref()
                .is_none_or(|d| d.iter().all(|x| !x))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumMode {
    pub eigenvalue: f64,
    pub violation: bool,
    pub degeneracy: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub n: usize,
    pub max_abs_eigenvalue: f64,
    pub analytic_max_abs: Option<f64>,
    pub violation: bool,
    pub eigenvalues: Vec<f64>,
    pub modes: Vec<SpectrumMode>,
}

impl SpectrumOutput {
    pub fn from_report(n: usize, report: &SpectralReport) -> Self {
        SpectrumOutput {
            n,
            max_abs_eigenvalue: report.max_abs_eigenvalue,
            analytic_max_abs: report.analytic_max_abs,
            violation: report.any_violation(),
            eigenvalues: report.eigenvalues.clone(),
            modes: report
                .entries
                .iter()
                .map(|e| SpectrumMode {
                    eigenvalue: e.eigenvalue,
                    violation: e.violation,
                    degeneracy: e.degeneracy.name().to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateOutput {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OptimizeOutput {
    pub n: usize,
    pub seed: u64,
    pub budget: usize,
    pub value: f64,
    pub reached_target: bool,
    pub starts_used: usize,
    pub sweeps_used: usize,
    pub phi: Vec<f64>,
    pub phi_prime: Vec<f64>,
    pub signs: [i8; 4],
    pub pairing: Vec<String>,
    pub state: StateOutput,
    pub max_magnitude_residual: f64,
    pub max_phase_residual: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckOutput {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub witness: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CorrelateOutput {
    pub n: usize,
    pub angles: Vec<f64>,
    pub closed: f64,
    pub direct: f64,
    pub difference: f64,
}

//! Experiment configuration, read from TOML files whose keys mirror
//! [`ExperimentConfig`].

use std::path::{Path, PathBuf};

use faddeev_core::solver::SolverConfig;
use faddeev_core::ModelParams;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Overrides `output_dir` of every loaded config.
pub const OUTPUT_DIR_ENV: &str = "FADDEEV_OUTPUT_DIR";
/// Size of the worker pool.
pub const THREADS_ENV: &str = "FADDEEV_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Run,
    Convergence,
    Sweep,
    Suites,
    Validate,
}

fn one() -> f64 {
    1.0
}

fn ten() -> f64 {
    10.0
}

/// Named initial-data families of the registry.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DataProfile {
    /// `u₀ = φ`, `u₁ = 0`.
    #[default]
    Plateau,
    /// `N₁π e^{−αr²}` joined to the plateau inside `r < 2`.
    GaussBump {
        #[serde(default = "one")]
        alpha: f64,
    },
    /// `u₀ = φ`, `u₁ = β r e^{−r²}`.
    KineticKick {
        #[serde(default = "one")]
        beta: f64,
    },
    /// Gauss bump with its amplitude scaled until the energy is
    /// `energy_factor` times the plateau energy.
    LargeAmp {
        #[serde(default = "one")]
        alpha: f64,
        #[serde(default = "ten")]
        energy_factor: f64,
    },
    /// Data of the forced problem with exact lift `cos(t) e^{−r²}`; runs
    /// with this profile include the forcing.
    Manufactured,
}

impl DataProfile {
    pub const NAMES: [&'static str; 5] = ["plateau", "gauss-bump", "kinetic-kick", "large-amp", "manufactured"];

    /// The profile with default parameters.
    pub fn lookup(name: &str) -> Result<Self> {
        Ok(match name {
            "plateau" => Self::Plateau,
            "gauss-bump" => Self::GaussBump { alpha: 1.0 },
            "kinetic-kick" => Self::KineticKick { beta: 1.0 },
            "large-amp" => Self::LargeAmp { alpha: 1.0, energy_factor: 10.0 },
            "manufactured" => Self::Manufactured,
            other => return Err(HarnessError::UnknownProfile(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Plateau => "plateau",
            Self::GaussBump { .. } => "gauss-bump",
            Self::KineticKick { .. } => "kinetic-kick",
            Self::LargeAmp { .. } => "large-amp",
            Self::Manufactured => "manufactured",
        }
    }

    /// Name of the parameter a sweep varies, if the profile has one.
    pub fn sweep_parameter(&self) -> Option<&'static str> {
        match self {
            Self::GaussBump { .. } => Some("alpha"),
            Self::KineticKick { .. } => Some("beta"),
            Self::LargeAmp { .. } => Some("energy_factor"),
            Self::Plateau | Self::Manufactured => None,
        }
    }

    /// Copy with the swept parameter set to `value`.
    pub fn with_sweep_value(&self, value: f64) -> Result<Self> {
        Ok(match *self {
            Self::GaussBump { .. } => Self::GaussBump { alpha: value },
            Self::KineticKick { .. } => Self::KineticKick { beta: value },
            Self::LargeAmp { alpha, .. } => Self::LargeAmp { alpha, energy_factor: value },
            Self::Plateau | Self::Manufactured => {
                return Err(HarnessError::Config(format!("profile `{}` has no parameter to sweep", self.name())))
            }
        })
    }

    fn check(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(HarnessError::Config(format!("{name} must be positive and finite, got {x}")))
            }
        };
        match *self {
            Self::GaussBump { alpha } => positive("alpha", alpha),
            Self::KineticKick { beta } => {
                if beta.is_finite() {
                    Ok(())
                } else {
                    Err(HarnessError::Config("beta must be finite".into()))
                }
            }
            Self::LargeAmp { alpha, energy_factor } => {
                positive("alpha", alpha)?;
                if energy_factor > 1.0 && energy_factor.is_finite() {
                    Ok(())
                } else {
                    Err(HarnessError::Config(format!("energy_factor must exceed 1, got {energy_factor}")))
                }
            }
            Self::Plateau | Self::Manufactured => Ok(()),
        }
    }
}

/// A profile plus the values of its parameter visited by a sweep.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct DataProfileConfig {
    pub profile: DataProfile,
    pub sweep: Vec<f64>,
}

/// Flat table form of [`DataProfileConfig`]; rejects parameters that do not
/// belong to the named profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    energy_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    sweep: Vec<f64>,
}

impl TryFrom<RawProfile> for DataProfileConfig {
    type Error = String;

    fn try_from(raw: RawProfile) -> std::result::Result<Self, String> {
        let profile = DataProfile::lookup(&raw.name).map_err(|e| e.to_string())?;
        let stray = |key: &str| Err(format!("profile `{}` takes no parameter `{key}`", raw.name));
        let profile = match profile {
            DataProfile::GaussBump { alpha } => {
                if raw.beta.is_some() {
                    return stray("beta");
                }
                if raw.energy_factor.is_some() {
                    return stray("energy_factor");
                }
                DataProfile::GaussBump { alpha: raw.alpha.unwrap_or(alpha) }
            }
            DataProfile::KineticKick { beta } => {
                if raw.alpha.is_some() {
                    return stray("alpha");
                }
                if raw.energy_factor.is_some() {
                    return stray("energy_factor");
                }
                DataProfile::KineticKick { beta: raw.beta.unwrap_or(beta) }
            }
            DataProfile::LargeAmp { alpha, energy_factor } => {
                if raw.beta.is_some() {
                    return stray("beta");
                }
                DataProfile::LargeAmp {
                    alpha: raw.alpha.unwrap_or(alpha),
                    energy_factor: raw.energy_factor.unwrap_or(energy_factor),
                }
            }
            p @ (DataProfile::Plateau | DataProfile::Manufactured) => {
                for (key, given) in
                    [("alpha", raw.alpha.is_some()), ("beta", raw.beta.is_some()), ("energy_factor", raw.energy_factor.is_some())]
                {
                    if given {
                        return stray(key);
                    }
                }
                p
            }
        };
        Ok(Self { profile, sweep: raw.sweep })
    }
}

impl From<DataProfileConfig> for RawProfile {
    fn from(c: DataProfileConfig) -> Self {
        let mut raw =
            RawProfile { name: c.profile.name().to_string(), alpha: None, beta: None, energy_factor: None, sweep: c.sweep };
        match c.profile {
            DataProfile::GaussBump { alpha } => raw.alpha = Some(alpha),
            DataProfile::KineticKick { beta } => raw.beta = Some(beta),
            DataProfile::LargeAmp { alpha, energy_factor } => {
                raw.alpha = Some(alpha);
                raw.energy_factor = Some(energy_factor);
            }
            DataProfile::Plateau | DataProfile::Manufactured => {}
        }
        raw
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub model: ModelParams,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub data_profile: DataProfileConfig,
    pub output_dir: PathBuf,
    /// Seed of the randomized suite families.
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| HarnessError::ConfigParse { path: origin.to_path_buf(), message: e.to_string() })
    }

    /// Reads a config file and applies the output-directory override.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::ConfigRead { path: path.to_path_buf(), source })?;
        let mut config = Self::from_toml(&text, path)?;
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV) {
            config.output_dir = PathBuf::from(dir);
        }
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| HarnessError::Serialize(e.to_string()))
    }

    /// Parameter checks that do not touch the file system.
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.solver.validate()?;
        if self.model.cfl != self.solver.cfl {
            return Err(HarnessError::Config(format!(
                "model.cfl = {} and solver.cfl = {} disagree",
                self.model.cfl, self.solver.cfl
            )));
        }
        self.data_profile.profile.check()?;
        let sweep = &self.data_profile.sweep;
        match self.kind {
            ExperimentKind::Sweep => {
                if sweep.is_empty() {
                    return Err(HarnessError::Config("sweep needs data_profile.sweep values".into()));
                }
                for &x in sweep {
                    self.data_profile.profile.with_sweep_value(x)?.check()?;
                }
            }
            _ if !sweep.is_empty() => {
                return Err(HarnessError::Config("data_profile.sweep is only allowed for kind = \"sweep\"".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// Creates the output directory and checks that it accepts files.
    pub fn prepare_output_dir(&self) -> Result<()> {
        let dir = &self.output_dir;
        let unwritable = |e: std::io::Error| HarnessError::Config(format!("output_dir {} is not writable: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(unwritable)?;
        let probe = dir.join(".write-probe");
        std::fs::write(&probe, b"").map_err(unwritable)?;
        std::fs::remove_file(&probe).map_err(unwritable)
    }
}

//! Scenario configuration: a flat JSON document, validated on load.
//!
//! See `docs/config-schema.md` for the field reference.

use std::path::{Path, PathBuf};

use qthermo::dynamics::{
    dephasing_model, exchange_unitary_model, thermal_bath_model, two_atom_model, IntegratorConfig,
    LindbladModel,
};
use qthermo::qstate::{bloch_to_density, product_state, C64};
use qthermo::thermo::EnvironmentSpec;
use qthermo::{BlochState, ComplexMatrix, EffectiveField};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T_MAX: f64 = 10.0;
pub const PANELS: [&str; 5] = ["heat-work", "temperature", "entropy", "coherence", "bloch"];
const DEFAULT_PANELS: [&str; 3] = ["heat-work", "temperature", "bloch"];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("model `{model}` requires `{field}`")]
    Missing { model: &'static str, field: &'static str },
    #[error("model `{model}` does not take `{field}`")]
    Unexpected { model: &'static str, field: &'static str },
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("`{field}` = {vector:?} is not a physical Bloch vector (modulus {modulus} > 1)")]
    NonPhysical {
        field: &'static str,
        vector: [f64; 3],
        modulus: f64,
    },
    #[error("unknown scenario `{0}` (not a built-in name or a readable file)")]
    UnknownScenario(String),
    #[error(transparent)]
    Model(#[from] qthermo::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    ThermalBath,
    Dephasing,
    TwoAtom,
    ExchangeUnitary,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::ThermalBath => "thermal_bath",
            ModelKind::Dephasing => "dephasing",
            ModelKind::TwoAtom => "two_atom",
            ModelKind::ExchangeUnitary => "exchange_unitary",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            ModelKind::ThermalBath | ModelKind::Dephasing => 2,
            ModelKind::TwoAtom | ModelKind::ExchangeUnitary => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub model: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<f64>,
    #[serde(default, rename = "T_env", skip_serializing_if = "Option::is_none")]
    pub t_env: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_phi: Option<f64>,
    #[serde(default, rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch_a: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch_b: Option<[f64; 3]>,
    /// Row-major 4×4 density matrix, each entry `[re, im]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho4: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default = "default_field")]
    pub field: [f64; 3],
    /// Step; `None` means `DEFAULT_DT / gamma0` (or `DEFAULT_DT` without a γ₀).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_stride")]
    pub sample_stride: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    #[serde(default = "default_plots")]
    pub plots: bool,
    #[serde(default = "default_panels")]
    pub panels: Vec<String>,
}

fn default_field() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

fn default_t_max() -> f64 {
    DEFAULT_T_MAX
}

fn default_stride() -> usize {
    1
}

fn default_plots() -> bool {
    true
}

fn default_panels() -> Vec<String> {
    DEFAULT_PANELS.iter().map(|s| s.to_string()).collect()
}

/// Parse and validate a config document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let cfg: ScenarioConfig = serde_json::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config_file(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Resolve a built-in scenario name, or else read the argument as a path.
pub fn resolve_scenario(name_or_path: &str) -> Result<ScenarioConfig, ConfigError> {
    if let Some(cfg) = crate::registry::builtin(name_or_path) {
        return Ok(cfg);
    }
    let path = Path::new(name_or_path);
    if path.is_file() {
        return load_config_file(path);
    }
    Err(ConfigError::UnknownScenario(name_or_path.to_string()))
}

fn positive(field: &'static str, value: f64) -> Result<(), ConfigError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Invalid {
            field,
            reason: format!("must be positive and finite, got {value}"),
        })
    }
}

fn physical(field: &'static str, v: [f64; 3]) -> Result<BlochState, ConfigError> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(ConfigError::Invalid {
            field,
            reason: format!("{v:?} has non-finite components"),
        });
    }
    BlochState::from_array(v).map_err(|_| ConfigError::NonPhysical {
        field,
        vector: v,
        modulus: v.iter().map(|x| x * x).sum::<f64>().sqrt(),
    })
}

impl ScenarioConfig {
    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let model = self.model.name();
        if self.name.trim().is_empty() || self.name.contains(['/', '\\']) {
            return Err(ConfigError::Invalid {
                field: "name",
                reason: "must be a non-empty file-name-safe string".into(),
            });
        }

        let params: [(&'static str, Option<f64>); 5] = [
            ("gamma0", self.gamma0),
            ("T_env", self.t_env),
            ("g", self.g),
            ("gamma_phi", self.gamma_phi),
            ("J", self.j),
        ];
        let (required, optional): (&[&str], &[&str]) = match self.model {
            ModelKind::ThermalBath => (&["gamma0", "T_env"], &[]),
            ModelKind::Dephasing => (&["gamma_phi"], &[]),
            ModelKind::TwoAtom => (&["gamma0", "g"], &["T_env"]),
            ModelKind::ExchangeUnitary => (&["J"], &[]),
        };
        for (field, value) in params {
            match (value.is_some(), required.contains(&field), optional.contains(&field)) {
                (false, true, _) => return Err(ConfigError::Missing { model, field }),
                (true, false, false) => return Err(ConfigError::Unexpected { model, field }),
                _ => {}
            }
        }
        if let Some(g0) = self.gamma0 {
            positive("gamma0", g0)?;
        }
        if let Some(gp) = self.gamma_phi {
            positive("gamma_phi", gp)?;
        }
        if let Some(t) = self.t_env {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(ConfigError::Invalid {
                    field: "T_env",
                    reason: format!("must be finite and non-negative, got {t}"),
                });
            }
            if self.model == ModelKind::TwoAtom && t != 0.0 {
                return Err(ConfigError::Invalid {
                    field: "T_env",
                    reason: "the two-atom model is defined for a zero-temperature environment".into(),
                });
            }
        }
        if let Some(g) = self.g {
            if !(0.0..=1.0).contains(&g) {
                return Err(ConfigError::Invalid {
                    field: "g",
                    reason: format!("must lie in [0, 1], got {g}"),
                });
            }
        }
        if let Some(j) = self.j {
            if j == 0.0 || !j.is_finite() {
                return Err(ConfigError::Invalid {
                    field: "J",
                    reason: format!("must be finite and nonzero, got {j}"),
                });
            }
        }

        let [fx, fy, fz] = self.field;
        if fx != 0.0 || fy != 0.0 || !(fz > 0.0 && fz.is_finite()) {
            return Err(ConfigError::Invalid {
                field: "field",
                reason: format!("must be (0, 0, ε) with ε > 0, got {:?}", self.field),
            });
        }

        self.validate_initial_state()?;
        self.integrator()?;
        for panel in &self.panels {
            if !PANELS.contains(&panel.as_str()) {
                return Err(ConfigError::Invalid {
                    field: "panels",
                    reason: format!("unknown panel `{panel}` (expected one of {PANELS:?})"),
                });
            }
        }
        Ok(())
    }

    fn validate_initial_state(&self) -> Result<(), ConfigError> {
        let model = self.model.name();
        let pair = self.bloch_a.is_some() || self.bloch_b.is_some();
        if self.dim() == 2 {
            for (field, present) in [("bloch_a", self.bloch_a.is_some()), ("bloch_b", self.bloch_b.is_some()), ("rho4", self.rho4.is_some())] {
                if present {
                    return Err(ConfigError::Unexpected { model, field });
                }
            }
            let b = self.bloch.ok_or(ConfigError::Missing { model, field: "bloch" })?;
            physical("bloch", b)?;
            return Ok(());
        }
        if self.bloch.is_some() {
            return Err(ConfigError::Unexpected { model, field: "bloch" });
        }
        match (pair, &self.rho4) {
            (true, Some(_)) => Err(ConfigError::Invalid {
                field: "rho4",
                reason: "give either bloch_a/bloch_b or rho4, not both".into(),
            }),
            (true, None) => {
                physical("bloch_a", self.bloch_a.ok_or(ConfigError::Missing { model, field: "bloch_a" })?)?;
                physical("bloch_b", self.bloch_b.ok_or(ConfigError::Missing { model, field: "bloch_b" })?)?;
                Ok(())
            }
            (false, Some(_)) => {
                let rho = self.rho4_matrix()?;
                rho.check_density().map_err(|e| ConfigError::Invalid {
                    field: "rho4",
                    reason: e.to_string(),
                })?;
                let lowest = qthermo::qstate::eigendecompose(&rho)?.min_value();
                if lowest < -1e-9 {
                    return Err(ConfigError::Invalid {
                        field: "rho4",
                        reason: format!("not positive semidefinite (eigenvalue {lowest:e})"),
                    });
                }
                Ok(())
            }
            (false, None) => Err(ConfigError::Missing { model, field: "bloch_a" }),
        }
    }

    fn rho4_matrix(&self) -> Result<ComplexMatrix, ConfigError> {
        let rows = self.rho4.as_ref().ok_or(ConfigError::Missing {
            model: self.model.name(),
            field: "rho4",
        })?;
        if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
            return Err(ConfigError::Invalid {
                field: "rho4",
                reason: "must be a 4×4 array of [re, im] pairs".into(),
            });
        }
        let entries = rows.iter().flatten().map(|[re, im]| C64::new(*re, *im)).collect();
        Ok(ComplexMatrix::from_row_major(entries)?)
    }

    pub fn effective_field(&self) -> Result<EffectiveField, ConfigError> {
        Ok(EffectiveField::from_vec(self.field.into())?)
    }

    pub fn epsilon(&self) -> f64 {
        self.field[2]
    }

    pub fn environment(&self) -> Option<EnvironmentSpec> {
        self.t_env.and_then(|t| EnvironmentSpec::new(t).ok())
    }

    pub fn step(&self) -> f64 {
        match (self.dt, self.model, self.gamma0) {
            (Some(dt), _, _) => dt,
            (None, ModelKind::ThermalBath | ModelKind::TwoAtom, Some(g)) if g > 0.0 => DEFAULT_DT / g,
            _ => DEFAULT_DT,
        }
    }

    pub fn integrator(&self) -> Result<IntegratorConfig, ConfigError> {
        IntegratorConfig::new(self.step(), self.t_max, self.sample_stride).map_err(|e| match e {
            qthermo::Error::InvalidParameter { name, value, reason } => ConfigError::Invalid {
                field: name,
                reason: format!("{reason}, got {value}"),
            },
            other => other.into(),
        })
    }

    pub fn build_model(&self) -> Result<LindbladModel, ConfigError> {
        let need = |field: &'static str, v: Option<f64>| {
            v.ok_or(ConfigError::Missing {
                model: self.model.name(),
                field,
            })
        };
        let eps = self.epsilon();
        let model = match self.model {
            ModelKind::ThermalBath => thermal_bath_model(need("gamma0", self.gamma0)?, need("T_env", self.t_env)?, eps)?,
            ModelKind::Dephasing => dephasing_model(need("gamma_phi", self.gamma_phi)?, eps)?,
            ModelKind::TwoAtom => two_atom_model(need("gamma0", self.gamma0)?, need("g", self.g)?, eps)?,
            ModelKind::ExchangeUnitary => exchange_unitary_model(need("J", self.j)?)?,
        };
        Ok(model)
    }

    pub fn initial_state(&self) -> Result<ComplexMatrix, ConfigError> {
        if self.dim() == 2 {
            let b = self.bloch.ok_or(ConfigError::Missing {
                model: self.model.name(),
                field: "bloch",
            })?;
            return Ok(bloch_to_density(&physical("bloch", b)?));
        }
        match (self.bloch_a, self.bloch_b) {
            (Some(a), Some(b)) => Ok(product_state(&physical("bloch_a", a)?, &physical("bloch_b", b)?)),
            _ => self.rho4_matrix(),
        }
    }

    /// Directory for output files: the explicit override, then `out_dir`,
    /// then `out/<name>`.
    pub fn output_dir(&self, explicit: Option<&Path>) -> PathBuf {
        match (explicit, &self.out_dir) {
            (Some(dir), _) => dir.to_path_buf(),
            (None, Some(dir)) => PathBuf::from(dir),
            (None, None) => Path::new("out").join(&self.name),
        }
    }

    /// Replace one numeric key, as used by `sweep`. The result is validated.
    pub fn with_param(&self, key: &str, value: f64) -> Result<ScenarioConfig, ConfigError> {
        let mut doc = serde_json::to_value(self)?;
        let obj = doc.as_object_mut().expect("config serializes to an object");
        let numeric = ["gamma0", "T_env", "g", "gamma_phi", "J", "dt", "t_max"];
        if key == "sample_stride" {
            if value < 1.0 || value.fract() != 0.0 {
                return Err(ConfigError::Invalid {
                    field: "sample_stride",
                    reason: format!("must be a positive integer, got {value}"),
                });
            }
            obj.insert(key.into(), serde_json::json!(value as u64));
        } else if numeric.contains(&key) {
            obj.insert(key.into(), serde_json::json!(value));
        } else {
            return Err(ConfigError::Invalid {
                field: "param",
                reason: format!("`{key}` is not a numeric scenario parameter"),
            });
        }
        let cfg: ScenarioConfig = serde_json::from_value(doc)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

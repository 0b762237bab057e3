use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use emlindex_core::document::DatumDoc;
use emlindex_core::geometry::{build_p1_polarized, build_pushed_symbol, twist_numerators, Twist};
use emlindex_core::{exact::Rational, LocalizationDatum, OracleSpec, Sign};

pub const DEFAULT_TRUNCATION_ORDER: usize = 8;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Task {
    Splines,
    Multiplicity,
    Verify,
    Em,
    Csv,
}

impl std::str::FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown task {s:?} (splines, multiplicity, verify, em, csv)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "camelCase", deny_unknown_fields)]
pub enum DatumSource {
    P1 {
        #[serde(rename = "A")]
        a: u32,
        #[serde(default)]
        polarization: Sign,
    },
    P1Spinor {
        #[serde(rename = "A")]
        a: u32,
        #[serde(default = "one")]
        rho: i64,
    },
    Pushed { weights: Vec<i64> },
    Inline { datum: DatumDoc },
}

fn one() -> i64 {
    1
}

impl DatumSource {
    pub fn build(&self) -> Result<LocalizationDatum, emlindex_core::Error> {
        Ok(match self {
            DatumSource::P1 { a, polarization } => build_p1_polarized(*a, *polarization),
            DatumSource::P1Spinor { a, rho } => twist_numerators(&build_p1_polarized(*a, Sign::Plus), &Twist::spinor(*rho))?,
            DatumSource::Pushed { weights } => build_pushed_symbol(weights)?,
            DatumSource::Inline { datum } => datum.to_datum()?,
        })
    }

    pub fn default_window(&self) -> (i64, i64) {
        match self {
            DatumSource::P1 { a, .. } | DatumSource::P1Spinor { a, .. } => (-5, *a as i64 + 5),
            DatumSource::Pushed { .. } => (0, 20),
            DatumSource::Inline { .. } => (-5, 20),
        }
    }

    /// Ground truth for the `verify` task, when the builder has one.
    pub fn default_oracle(&self) -> Option<Verifier> {
        match self {
            DatumSource::P1 { a, .. } => Some(Verifier::Spec(OracleSpec::P1Character { a: *a as i64 })),
            DatumSource::P1Spinor { a, rho } => Some(Verifier::SpinorP1 { a: *a as i64, rho: *rho }),
            DatumSource::Pushed { weights } => Some(Verifier::Spec(OracleSpec::PartitionDp { weights: weights.clone() })),
            DatumSource::Inline { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verifier {
    Spec(OracleSpec),
    /// `[0 ≤ λ-ρ ≤ A] - [0 ≤ λ+ρ ≤ A]`, the telescoped spinor-twisted P¹ character.
    SpinorP1 { a: i64, rho: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Outputs {
    pub report: Option<PathBuf>,
    pub csv_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JobConfig {
    pub datum: DatumSource,
    #[serde(default)]
    pub truncation_order: Option<usize>,
    #[serde(default)]
    pub window: Option<(i64, i64)>,
    #[serde(default)]
    pub eps_sign: Sign,
    pub tasks: Vec<Task>,
    /// Ascending coefficients as `p/q` strings.
    #[serde(default)]
    pub em_polynomial: Option<Vec<String>>,
    /// Overrides the builder's oracle for `verify`.
    #[serde(default)]
    pub oracle: Option<OracleSpec>,
    #[serde(default)]
    pub csv_step: Option<String>,
    #[serde(default)]
    pub outputs: Outputs,
}

impl JobConfig {
    pub fn new(datum: DatumSource, tasks: Vec<Task>) -> Self {
        JobConfig {
            datum,
            truncation_order: None,
            window: None,
            eps_sign: Sign::Plus,
            tasks,
            em_polynomial: None,
            oracle: None,
            csv_step: None,
            outputs: Outputs::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn window(&self) -> (i64, i64) {
        self.window.unwrap_or_else(|| self.datum.default_window())
    }

    pub fn has(&self, t: Task) -> bool {
        self.tasks.contains(&t)
    }

    pub fn polynomial(&self) -> Result<Vec<Rational>, ConfigError> {
        let coeffs = self.em_polynomial.as_deref().unwrap_or(&[]);
        if coeffs.is_empty() {
            return Err(ConfigError::Invalid("the em task needs emPolynomial".into()));
        }
        coeffs
            .iter()
            .enumerate()
            .map(|(i, s)| {
                emlindex_core::parse_rational(s)
                    .map_err(|e| ConfigError::Schema { path: format!("emPolynomial[{i}]"), message: e.to_string() })
            })
            .collect()
    }

    pub fn csv_step(&self) -> Result<Rational, ConfigError> {
        let s = self.csv_step.as_deref().unwrap_or("1/4");
        let step = emlindex_core::parse_rational(s)
            .map_err(|e| ConfigError::Schema { path: "csvStep".into(), message: e.to_string() })?;
        if step <= Rational::from_integer(0.into()) {
            return Err(ConfigError::Schema { path: "csvStep".into(), message: "must be positive".into() });
        }
        Ok(step)
    }

    /// Truncation order actually used. Without an explicit order the default
    /// is raised to what the `em` task needs.
    pub fn resolve_truncation_order(&self, d_max: usize) -> Result<usize, ConfigError> {
        let em_need = if self.has(Task::Em) {
            let f = emlindex_core::Polynomial::from_rationals(&self.polynomial()?);
            Some(f.degree().unwrap_or(0) + d_max + 1)
        } else {
            None
        };
        match self.truncation_order {
            Some(q) => {
                if q < d_max {
                    return Err(ConfigError::Invalid(format!("truncationOrder {q} < d_max = {d_max}")));
                }
                if let Some(need) = em_need.filter(|&n| q < n) {
                    return Err(ConfigError::Invalid(format!(
                        "truncationOrder {q} too small for the em task: need deg f + d_max + 1 = {need}"
                    )));
                }
                Ok(q)
            }
            None => Ok(DEFAULT_TRUNCATION_ORDER.max(d_max).max(em_need.unwrap_or(0))),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.tasks.is_empty() {
            return Err(ConfigError::Invalid("no tasks requested".into()));
        }
        let (lo, hi) = self.window();
        if lo > hi {
            return Err(ConfigError::Schema { path: "window".into(), message: format!("empty window [{lo}, {hi}]") });
        }
        if self.has(Task::Em) {
            self.polynomial()?;
        }
        if self.has(Task::Csv) {
            self.csv_step()?;
        }
        if self.has(Task::Verify) && self.oracle.is_none() && self.datum.default_oracle().is_none() {
            return Err(ConfigError::Invalid("verify needs an oracle for inline data".into()));
        }
        if let Some(o) = &self.oracle {
            o.validate().map_err(|e| ConfigError::Schema { path: "oracle".into(), message: e.to_string() })?;
        }
        Ok(())
    }
}

//! Scenario files: one JSON object describing parameters, coupling, grid,
//! routes and an optional sweep.

use std::path::{Path, PathBuf};

use casimir_friction::{CouplingProfile, FockSettings, PhysicalParams, Route, TimeGrid};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A JSON array that must not be empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>")]
pub struct NonEmpty<T>(Vec<T>);

impl<T> TryFrom<Vec<T>> for NonEmpty<T> {
    type Error = String;

    fn try_from(v: Vec<T>) -> Result<Self, String> {
        if v.is_empty() {
            Err("list must not be empty".into())
        } else {
            Ok(NonEmpty(v))
        }
    }
}

impl<T> std::ops::Deref for NonEmpty<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

/// Either an inline profile or a CSV table on disk.
#[derive(Debug, Clone, PartialEq)]
enum ProfileSpec {
    Table(CsvSpec),
    Inline(CouplingProfile),
}

impl<'de> Deserialize<'de> for ProfileSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        // Buffered so the tag can be inspected; errors re-raised here keep the
        // position of the profile object in the file.
        let value = serde_json::Value::deserialize(d)?;
        if value.get("type").and_then(|t| t.as_str()) == Some("sampled_csv") {
            CsvSpec::deserialize(value)
                .map(ProfileSpec::Table)
                .map_err(D::Error::custom)
        } else {
            CouplingProfile::deserialize(value)
                .map(ProfileSpec::Inline)
                .map_err(D::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct CsvSpec {
    #[serde(rename = "type")]
    kind: CsvTag,
    path: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CsvTag {
    SampledCsv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScanSpec {
    /// Adiabatic sweep over the decay rate of a ramp profile; grids are
    /// chosen per point.
    Eta {
        values: NonEmpty<f64>,
        #[serde(default)]
        dt: Option<f64>,
    },
    /// Sweep of the profile amplitude on the scenario grid.
    Amplitude { values: NonEmpty<f64> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    scenario_id: String,
    params: PhysicalParams,
    profile: ProfileSpec,
    #[serde(default)]
    grid: Option<TimeGrid>,
    routes: NonEmpty<Route>,
    #[serde(default)]
    fock: Option<FockSettings>,
    #[serde(default)]
    scan: Option<ScanSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub scenario_id: String,
    pub params: PhysicalParams,
    pub profile: CouplingProfile,
    /// Absent only for eta scans.
    pub grid: Option<TimeGrid>,
    pub routes: Vec<Route>,
    pub fock: FockSettings,
    pub scan: Option<ScanSpec>,
}

/// 1-based line of the first occurrence of `"key"`, for messages about
/// checks that run after parsing.
fn line_of_key(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines()
        .position(|l| l.contains(&needle))
        .map_or(1, |i| i + 1)
}

/// Parses and validates a scenario. Relative CSV paths resolve against
/// `base_dir`.
pub fn parse_scenario(text: &str, base_dir: &Path) -> Result<Scenario, CliError> {
    let raw: RawScenario =
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let at = |key: &str, msg: String| {
        CliError::Config(format!("{msg} at line {}", line_of_key(text, key)))
    };

    let profile = match raw.profile {
        ProfileSpec::Inline(p) => p,
        ProfileSpec::Table(CsvSpec {
            kind: CsvTag::SampledCsv,
            path,
        }) => {
            let path = if path.is_absolute() {
                path
            } else {
                base_dir.join(path)
            };
            CouplingProfile::from_csv_path(&path).map_err(|e| at("path", e.to_string()))?
        }
    };
    let fock = raw.fock.unwrap_or_default();
    if fock.truncation < 2 {
        return Err(at(
            "truncation",
            format!("fock truncation must be >= 2, got {}", fock.truncation),
        ));
    }
    if fock.substeps < 1 {
        return Err(at("substeps", "fock substeps must be >= 1".into()));
    }
    let mut routes = raw.routes.to_vec();
    routes.sort();
    routes.dedup();

    match &raw.scan {
        Some(ScanSpec::Eta { values, .. }) => {
            if !matches!(
                profile,
                CouplingProfile::ExponentialRamp { .. } | CouplingProfile::SymmetricRamp { .. }
            ) {
                return Err(at(
                    "scan",
                    format!("eta scans need a ramp profile, not {}", profile.kind()),
                ));
            }
            if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return Err(at(
                    "values",
                    format!("eta values must be positive, got {bad}"),
                ));
            }
        }
        Some(ScanSpec::Amplitude { values }) => {
            if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
                return Err(at(
                    "values",
                    format!("amplitudes must be finite, got {bad}"),
                ));
            }
            if raw.grid.is_none() {
                return Err(at("scan", "amplitude scans need a grid".into()));
            }
        }
        None => {
            if raw.grid.is_none() {
                return Err(at("scenario_id", "missing field `grid`".into()));
            }
        }
    }

    Ok(Scenario {
        scenario_id: raw.scenario_id,
        params: raw.params,
        profile,
        grid: raw.grid,
        routes,
        fock,
        scan: raw.scan,
    })
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_scenario(&text, base).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

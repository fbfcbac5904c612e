use casimir_friction::{
    adiabatic_scan, compare_routes, sample, AdiabaticScan, DissipationReport, Execution,
    FockSettings, PhysicalParams, Route, ScanSettings, TimeGrid,
};
use serde::{Deserialize, Serialize};

use crate::config::{ScanSpec, Scenario};
use crate::error::CliError;
use crate::report::SCHEMA_VERSION;

/// One route comparison, tagged with the scanned amplitude if any.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub eta_or_amp: Option<f64>,
    pub report: DissipationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub schema_version: String,
    pub scenario_id: String,
    pub profile: String,
    pub params: PhysicalParams,
    pub grid: Option<TimeGrid>,
    pub routes: Vec<Route>,
    pub fock: FockSettings,
    /// Route comparisons; empty for eta scans.
    pub rows: Vec<ReportRow>,
    pub adiabatic: Option<AdiabaticScan>,
}

impl ScenarioReport {
    fn empty(scenario: &Scenario) -> Self {
        ScenarioReport {
            schema_version: SCHEMA_VERSION.to_string(),
            scenario_id: scenario.scenario_id.clone(),
            profile: scenario.profile.kind().to_string(),
            params: scenario.params,
            grid: scenario.grid,
            routes: scenario.routes.clone(),
            fock: scenario.fock,
            rows: Vec::new(),
            adiabatic: None,
        }
    }
}

/// Runs every requested route, once per scan point. Points may be computed
/// concurrently; rows always come back in scan order.
pub fn run_scenario(scenario: &Scenario, execution: Execution) -> Result<ScenarioReport, CliError> {
    let mut out = ScenarioReport::empty(scenario);
    let compare = |profile: &casimir_friction::CouplingProfile, grid: &TimeGrid| {
        let signal = sample(profile, grid)?;
        compare_routes(
            &signal,
            &scenario.params,
            &scenario.routes,
            &scenario.fock,
            execution,
        )
    };
    match (&scenario.scan, scenario.grid) {
        (Some(ScanSpec::Eta { values, dt }), _) => {
            let settings = ScanSettings {
                dt: *dt,
                execution,
                ..ScanSettings::default()
            };
            out.adiabatic = Some(adiabatic_scan(
                &scenario.profile,
                values,
                &scenario.params,
                &settings,
            )?);
        }
        (Some(ScanSpec::Amplitude { values }), Some(grid)) => {
            let rows = casimir_friction::exec::map_ordered(values, execution, |&amp| {
                let profile = scenario.profile.with_amplitude(amp)?;
                Ok(ReportRow {
                    eta_or_amp: Some(amp),
                    report: compare(&profile, &grid)?,
                })
            });
            out.rows = rows.into_iter().collect::<casimir_friction::Result<_>>()?;
        }
        (None, Some(grid)) => {
            out.rows.push(ReportRow {
                eta_or_amp: None,
                report: compare(&scenario.profile, &grid)?,
            });
        }
        (_, None) => return Err(CliError::Config("missing field `grid`".into())),
    }
    Ok(out)
}

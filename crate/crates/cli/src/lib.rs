//! Batch front end for `casimir-friction`: reads a JSON scenario, runs the
//! selected routes and writes a CSV or JSON report.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::{load_scenario, parse_scenario, ScanSpec, Scenario};
pub use error::CliError;
pub use report::{emit_report, parse_json_report, Format, SCHEMA_VERSION};
pub use run::{run_scenario, ReportRow, ScenarioReport};

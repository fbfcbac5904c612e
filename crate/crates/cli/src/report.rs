use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::CliError;
use crate::run::ScenarioReport;

pub const SCHEMA_VERSION: &str = "1";

pub const CSV_HEADER: &str = "scenario_id,profile,eta_or_amp,delta_e_barton,delta_e_hb,delta_e_mode,delta_e_fock,relative_spread,validity_flag";
pub const SCAN_HEADER: &str = "eta,delta_e,delta_e_times_eta";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!(
                "unknown format `{other}`, expected csv or json"
            ))),
        }
    }
}

/// 17 significant digits, enough to recover every double exactly.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Quotes a CSV field only when it needs it.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(report: &ScenarioReport) -> String {
    let mut out = String::new();
    if let Some(scan) = &report.adiabatic {
        out.push_str(SCAN_HEADER);
        out.push('\n');
        for p in &scan.points {
            let _ = writeln!(
                out,
                "{},{},{}",
                num(p.eta),
                num(p.delta_e),
                num(p.delta_e_times_eta)
            );
        }
        let _ = writeln!(
            out,
            "fit_slope,{},{}",
            num(scan.slope),
            num(scan.slope_times_eta)
        );
        return out;
    }
    out.push_str(CSV_HEADER);
    out.push('\n');
    let id = field(&report.scenario_id);
    for row in &report.rows {
        let r = &row.report;
        let _ = writeln!(
            out,
            "{id},{},{},{},{},{},{},{},{}",
            report.profile,
            opt(row.eta_or_amp),
            opt(r.delta_e_barton),
            opt(r.delta_e_hb),
            opt(r.delta_e_mode_oracle),
            opt(r.delta_e_fock_oracle),
            num(r.relative_spread),
            r.validity_flag,
        );
    }
    out
}

pub fn emit_report(report: &ScenarioReport, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => Ok(csv(report).into_bytes()),
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(report)
                .map_err(|e| CliError::Numerical(format!("cannot serialize report: {e}")))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

pub fn parse_json_report(bytes: &[u8]) -> Result<ScenarioReport, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Config(e.to_string()))
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use casimir_friction::Execution;
use casimir_friction_cli::{emit_report, load_scenario, run_scenario, CliError, Format};
use clap::Parser;

/// Computes zero-temperature dissipation for two oscillators with a
/// time-dependent coupling.
#[derive(Debug, Parser)]
#[command(name = "casimir-friction", version)]
struct Args {
    /// Scenario file (JSON).
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reserved. The computation uses no randomness.
    #[arg(long)]
    seedless: bool,
}

fn run(args: &Args) -> Result<(), CliError> {
    if args.seedless {
        return Err(CliError::Config(
            "--seedless is reserved; results never depend on a seed".into(),
        ));
    }
    let scenario = load_scenario(&args.config)?;
    let report = run_scenario(&scenario, Execution::default())?;
    let bytes = emit_report(&report, args.format)?;
    let written = match &args.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|e| ("standard output".to_string(), e)),
    };
    written.map_err(|(dest, e)| CliError::Config(format!("cannot write {dest}: {e}")))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

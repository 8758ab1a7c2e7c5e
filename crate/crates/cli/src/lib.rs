//! Library side of the `abclab` scenario driver: config parsing, the
//! scenario pipelines, and deterministic output rendering.

pub mod config;
pub mod output;
pub mod scenarios;

pub use config::{parse_config, Overrides, Scenario, ScenarioConfig};
pub use output::{Check, RunSummary};
pub use scenarios::{run_scenario, RunOutcome};

use std::path::Path;

/// Errors surfaced by the driver; check failures are not errors (they set
/// the exit code instead).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config validation error: {0}")]
    Validation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Physics(#[from] abclab_core::Error),
}

/// Write `<out>/<scenario>.csv` and `<out>/summary.json`.
pub fn write_outputs(outcome: &RunOutcome, out_dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join(format!("{}.csv", outcome.summary.scenario));
    std::fs::write(csv_path, &outcome.csv)?;
    std::fs::write(out_dir.join("summary.json"), outcome.summary.to_json())?;
    Ok(())
}

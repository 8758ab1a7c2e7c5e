use abclab::{parse_config, run_scenario, write_outputs, CliError, Overrides, Scenario};
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Scenario driver for the charge-fluxon interference laboratory.
///
/// Runs the experiment named in the config file, writes a deterministic
/// CSV table plus a machine-readable summary, and exits 0 when every
/// built-in check passes, 2 when a physics check fails, and 1 on
/// usage or runtime errors.
#[derive(Debug, Parser)]
#[command(name = "abclab", version, about)]
struct Cli {
    /// Path to the scenario TOML config.
    config: PathBuf,
    /// Override the scenario named in the config file.
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    /// Seed for randomized suites (default: config value or 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Trial count for randomized suites (default: config value or 100).
    #[arg(long)]
    trials: Option<usize>,
    /// Output directory (default: config value or "out").
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(&cli.config)?;
    let overrides = Overrides {
        scenario: cli.scenario,
        seed: cli.seed,
        trials: cli.trials,
        out_dir: cli.out,
    };
    let config = parse_config(&text, &overrides)?;

    let started = Instant::now();
    let outcome = run_scenario(&config)?;
    let elapsed = started.elapsed();

    write_outputs(&outcome, &config.out_dir)?;

    println!(
        "scenario {} | seed {} | {} checks | wall time {:.3}s",
        outcome.summary.scenario,
        outcome.summary.seed,
        outcome.summary.checks.len(),
        elapsed.as_secs_f64()
    );
    for check in &outcome.summary.checks {
        let status = if check.pass { "pass" } else { "FAIL" };
        println!("  [{status}] {} ({})", check.name, check.detail);
    }
    println!(
        "wrote {}/{}.csv and {}/summary.json",
        config.out_dir.display(),
        outcome.summary.scenario,
        config.out_dir.display()
    );
    Ok(outcome.summary.all_passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

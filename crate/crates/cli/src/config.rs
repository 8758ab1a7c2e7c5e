//! TOML scenario configuration: parsing, defaults, and precondition checks.

use crate::CliError;
use abclab_core::model::VELOCITY_CAP;
use abclab_core::{ShieldState, Vec2};
use num_complex::Complex64;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum Scenario {
    Duality,
    Scatter,
    ShieldClassical,
    Config1,
    Config2,
    Config3,
    FringeScan,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Duality => "duality",
            Scenario::Scatter => "scatter",
            Scenario::ShieldClassical => "shield-classical",
            Scenario::Config1 => "config1",
            Scenario::Config2 => "config2",
            Scenario::Config3 => "config3",
            Scenario::FringeScan => "fringe-scan",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Scenario,
    seed: Option<u64>,
    trials: Option<usize>,
    out_dir: Option<PathBuf>,
    #[serde(default)]
    physics: RawPhysics,
    #[serde(default)]
    numerics: RawNumerics,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhysics {
    charge: Option<f64>,
    flux: Option<f64>,
    core_radius: Option<f64>,
    charge_mass: Option<f64>,
    fluxon_mass: Option<f64>,
    shield_radius: Option<f64>,
    shield_center: Option<[f64; 2]>,
    fluxon_position: Option<[f64; 2]>,
    orbit_radius: Option<f64>,
    angular_velocity: Option<f64>,
    impact_parameter: Option<f64>,
    speed: Option<f64>,
    shield_amplitudes: Option<Vec<AmplitudeEntry>>,
    flux_grid: Option<FluxGridSpec>,
    max_excess_pairs: Option<i64>,
    max_flux_quanta: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmplitudeEntry {
    m: i64,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FluxGridSpec {
    Explicit(Vec<f64>),
    Linear(LinearGrid),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearGrid {
    start: f64,
    stop: f64,
    points: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNumerics {
    n_samples: Option<usize>,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_depth: Option<usize>,
    nodes: Option<usize>,
    dt: Option<f64>,
    n_steps: Option<usize>,
}

/// Resolved physics parameters with defaults filled in.
#[derive(Debug, Clone)]
pub struct Physics {
    pub charge: f64,
    pub flux: f64,
    pub core_radius: f64,
    pub charge_mass: f64,
    pub fluxon_mass: f64,
    pub shield_radius: f64,
    pub shield_center: Vec2,
    pub fluxon_position: Vec2,
    pub orbit_radius: f64,
    pub angular_velocity: f64,
    pub impact_parameter: f64,
    pub speed: f64,
    pub shield_amplitudes: Option<ShieldState>,
    pub flux_grid: Vec<f64>,
    pub max_excess_pairs: i64,
    pub max_flux_quanta: i64,
}

/// Resolved numeric parameters with defaults filled in.
#[derive(Debug, Clone, Copy)]
pub struct Numerics {
    pub n_samples: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
    pub nodes: usize,
    pub dt: f64,
    pub n_steps: usize,
}

/// A fully validated scenario run description.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub trials: usize,
    pub out_dir: PathBuf,
    pub physics: Physics,
    pub numerics: Numerics,
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub scenario: Option<Scenario>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

pub fn parse_config(text: &str, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;

    let scenario = overrides.scenario.unwrap_or(raw.scenario);
    let seed = overrides.seed.or(raw.seed).unwrap_or(0);
    let trials = overrides.trials.or(raw.trials).unwrap_or(100);
    let out_dir = overrides
        .out_dir
        .clone()
        .or(raw.out_dir)
        .unwrap_or_else(|| PathBuf::from("out"));

    let p = raw.physics;
    let shield_amplitudes = p
        .shield_amplitudes
        .map(|entries| build_state(&entries))
        .transpose()?;
    let flux_grid = match p.flux_grid {
        None => default_flux_grid(),
        Some(FluxGridSpec::Explicit(values)) => values,
        Some(FluxGridSpec::Linear(g)) => {
            if g.points == 0 {
                return Err(CliError::Validation(
                    "flux_grid.points must be at least 1".into(),
                ));
            }
            (0..g.points)
                .map(|i| {
                    if g.points == 1 {
                        g.start
                    } else {
                        g.start + (g.stop - g.start) * i as f64 / (g.points - 1) as f64
                    }
                })
                .collect()
        }
    };

    let physics = Physics {
        charge: p.charge.unwrap_or(1.0),
        flux: p.flux.unwrap_or(1.0),
        core_radius: p.core_radius.unwrap_or(1e-4),
        charge_mass: p.charge_mass.unwrap_or(1.0),
        fluxon_mass: p.fluxon_mass.unwrap_or(1.0),
        shield_radius: p.shield_radius.unwrap_or(1.0),
        shield_center: p.shield_center.map_or(Vec2::ZERO, |[x, y]| Vec2::new(x, y)),
        fluxon_position: p
            .fluxon_position
            .map_or(Vec2::ZERO, |[x, y]| Vec2::new(x, y)),
        orbit_radius: p.orbit_radius.unwrap_or(2.0),
        angular_velocity: p.angular_velocity.unwrap_or(0.04),
        impact_parameter: p.impact_parameter.unwrap_or(1.0),
        speed: p.speed.unwrap_or(0.01),
        shield_amplitudes,
        flux_grid,
        max_excess_pairs: p.max_excess_pairs.unwrap_or(3),
        max_flux_quanta: p.max_flux_quanta.unwrap_or(3),
    };

    let n = raw.numerics;
    let numerics = Numerics {
        n_samples: n.n_samples.unwrap_or(720),
        rel_tol: n.rel_tol.unwrap_or(1e-6),
        abs_tol: n.abs_tol.unwrap_or(1e-12),
        max_depth: n.max_depth.unwrap_or(12),
        nodes: n.nodes.unwrap_or(256),
        dt: n.dt.unwrap_or(0.5),
        n_steps: n.n_steps.unwrap_or(2000),
    };

    let config = ScenarioConfig {
        scenario,
        seed,
        trials,
        out_dir,
        physics,
        numerics,
    };
    validate(&config)?;
    Ok(config)
}

fn default_flux_grid() -> Vec<f64> {
    (0..21).map(|i| i as f64 * 0.05).collect()
}

fn build_state(entries: &[AmplitudeEntry]) -> Result<ShieldState, CliError> {
    if entries.is_empty() {
        return Err(CliError::Validation(
            "shield_amplitudes must be nonempty".into(),
        ));
    }
    let mut amplitudes: BTreeMap<i64, Complex64> = BTreeMap::new();
    for e in entries {
        if amplitudes.insert(e.m, Complex64::new(e.re, e.im)).is_some() {
            return Err(CliError::Validation(format!(
                "shield_amplitudes repeats m = {}",
                e.m
            )));
        }
    }
    let norm: f64 = amplitudes.values().map(|b| b.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(CliError::Validation(format!(
            "shield_amplitudes must be normalized (sum |b_m|^2 = {norm})"
        )));
    }
    ShieldState::normalized(amplitudes).map_err(|e| CliError::Validation(e.to_string()))
}

fn require(cond: bool, precondition: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Validation(precondition.to_string()))
    }
}

fn validate(c: &ScenarioConfig) -> Result<(), CliError> {
    let p = &c.physics;
    let n = &c.numerics;
    require(p.core_radius > 0.0, "core_radius must be positive")?;
    require(
        p.charge_mass > 0.0 && p.fluxon_mass > 0.0,
        "masses must be positive",
    )?;
    require(
        n.rel_tol > 0.0 && n.abs_tol > 0.0,
        "quadrature tolerances must be positive",
    )?;
    require(n.n_samples >= 16, "n_samples must be at least 16")?;
    require(n.nodes >= 4, "nodes must be at least 4")?;
    require(c.trials >= 1, "trials must be at least 1")?;

    match c.scenario {
        Scenario::Duality => {}
        Scenario::Scatter => {
            require(n.dt > 0.0, "dt must be positive")?;
            require(n.n_steps >= 1, "n_steps must be at least 1")?;
            require(
                p.speed > 0.0 && p.speed < VELOCITY_CAP,
                "speed must lie in (0, 0.1): the model is first order in v/c",
            )?;
            require(
                p.impact_parameter > p.core_radius,
                "impact_parameter must exceed the core radius",
            )?;
        }
        Scenario::ShieldClassical => {
            require(p.shield_radius > 0.0, "shield_radius must be positive")?;
            require(
                (p.fluxon_position - p.shield_center).norm() + p.core_radius < p.shield_radius,
                "fluxon core must lie strictly inside the shield",
            )?;
            require(
                p.orbit_radius > p.shield_radius,
                "orbit_radius must exceed shield_radius",
            )?;
        }
        Scenario::Config1 => {
            require(p.shield_radius > 0.0, "shield_radius must be positive")?;
            require(
                p.orbit_radius > p.shield_radius,
                "orbit_radius must exceed shield_radius",
            )?;
            require(
                (p.orbit_radius * p.angular_velocity).abs() < VELOCITY_CAP,
                "orbit speed |r·angular_velocity| must stay below the 0.1 velocity cap",
            )?;
            require(
                p.core_radius < p.shield_radius,
                "fluxon core must fit inside the shield",
            )?;
            require(p.max_excess_pairs >= 0, "max_excess_pairs must be >= 0")?;
        }
        Scenario::Config2 | Scenario::FringeScan => {
            require(
                p.shield_amplitudes.is_some(),
                "this scenario requires physics.shield_amplitudes",
            )?;
            require(!p.flux_grid.is_empty(), "flux_grid must be nonempty")?;
        }
        Scenario::Config3 => {
            require(p.max_flux_quanta >= 0, "max_flux_quanta must be >= 0")?;
        }
    }
    Ok(())
}

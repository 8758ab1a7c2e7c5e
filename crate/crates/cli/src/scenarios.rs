//! Named experiment pipelines: each scenario runs a module pipeline,
//! emits a CSV table, and reports built-in pass/fail checks.

use crate::config::{Scenario, ScenarioConfig};
use crate::output::{Check, CsvCell, CsvTable, RunSummary};
use crate::CliError;
use abclab_core::classical_shield::{
    classical_abc_phase, config1_lagrangian_terms, shielded_field, CircularShield, SurfaceDensity,
};
use abclab_core::dynamics::{integrate, SystemState};
use abclab_core::fields2d::e_field_charge;
use abclab_core::model::{loop_phase, make_circular_trajectory, Trajectory};
use abclab_core::phases::{
    phase_dual_electric, phase_field_momentum, phase_vector_potential, two_path_fringe,
};
use abclab_core::quantum_shield::{check_shielding, phase_factor_u1, ShieldState};
use abclab_core::{ChargeState, FluxonState, Vec2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

/// Everything a scenario produces; the caller decides where it goes.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: RunSummary,
    pub csv: String,
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    match config.scenario {
        Scenario::Duality => duality(config),
        Scenario::Scatter => scatter(config),
        Scenario::ShieldClassical => shield_classical(config),
        Scenario::Config1 => config1(config),
        Scenario::Config2 => config2(config),
        Scenario::Config3 => config3(config),
        Scenario::FringeScan => fringe_scan(config),
    }
}

fn summary_base(config: &ScenarioConfig) -> RunSummary {
    RunSummary {
        scenario: config.scenario.name().to_string(),
        seed: config.seed,
        trials: config.trials,
        checks: Vec::new(),
        scalars: BTreeMap::new(),
    }
}

/// Smooth star-shaped loop of winding ±1 around `center`: a circle with a
/// couple of low-order radial modes, sampled uniformly in angle.
pub fn star_loop(
    rng: &mut ChaCha12Rng,
    center: Vec2,
    base_radius: f64,
    n: usize,
    ccw: bool,
) -> Trajectory {
    let modes: Vec<(f64, f64, f64)> = (2..=3)
        .map(|k| (k as f64, rng.gen_range(0.0..0.05), rng.gen_range(0.0..TAU)))
        .collect();
    let sign = if ccw { 1.0 } else { -1.0 };
    let mut samples = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let theta = sign * TAU * j as f64 / n as f64;
        let radius = base_radius
            * (1.0
                + modes
                    .iter()
                    .map(|(k, eps, off)| eps * (k * theta + off).cos())
                    .sum::<f64>());
        samples.push((j as f64, center + radius * Vec2::from_angle(theta)));
    }
    samples[n].1 = samples[0].1;
    Trajectory::new(samples, true).expect("loop samples are valid")
}

/// Random shield state satisfying Σ m|b_m|² = −q̃/2, with a few extra
/// occupied modes and random phases.
pub fn random_constrained_state(
    rng: &mut ChaCha12Rng,
    charge_q: f64,
    extra_modes: usize,
) -> ShieldState {
    let target = -charge_q / 2.0;
    let m1 = target.floor() as i64;
    let m2 = m1 + 1;
    loop {
        let mut weights: BTreeMap<i64, f64> = BTreeMap::new();
        let mut placed = 0;
        while placed < extra_modes {
            let m = m1 + rng.gen_range(-3i64..=4);
            if m == m1 || m == m2 || weights.contains_key(&m) {
                continue;
            }
            weights.insert(m, rng.gen_range(0.0..0.08 / extra_modes.max(1) as f64));
            placed += 1;
        }
        let s_other: f64 = weights.values().sum();
        let m_other: f64 = weights.iter().map(|(&m, &w)| m as f64 * w).sum();
        // Solve w1 + w2 = 1 − S and m1·w1 + m2·w2 = target − M.
        let w2 = target - m_other - m1 as f64 * (1.0 - s_other);
        let w1 = 1.0 - s_other - w2;
        if w1 < 0.0 || w2 < 0.0 {
            continue;
        }
        weights.insert(m1, w1);
        weights.insert(m2, w2);
        let amplitudes = weights
            .into_iter()
            .filter(|(_, w)| *w > 0.0)
            .map(|(m, w)| (m, Complex64::from_polar(w.sqrt(), rng.gen_range(0.0..TAU))))
            .collect();
        return ShieldState::normalized(amplitudes).expect("weights sum to one");
    }
}

fn duality(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let n = config.numerics.n_samples;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut csv = CsvTable::new(&[
        "trial",
        "winding",
        "charge",
        "flux",
        "phase_vector_potential",
        "phase_dual_electric",
        "phase_field_momentum",
        "expected",
    ]);

    let mut max_pairwise: f64 = 0.0;
    let mut max_deviation: f64 = 0.0;
    for trial in 0..config.trials {
        let anchor = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let base_radius = rng.gen_range(0.8..2.0);
        let ccw = rng.gen_bool(0.5);
        let rel = star_loop(&mut rng, Vec2::ZERO, base_radius, n, ccw);

        let charge_loop = Trajectory::new(
            rel.samples().iter().map(|(t, x)| (*t, anchor + *x)).collect(),
            true,
        )
        .expect("translated loop stays valid");
        let fluxon = FluxonState::at_rest(anchor, p.flux, p.core_radius);
        let r1 = phase_vector_potential(&charge_loop, p.charge, &fluxon)?;

        let fluxon_loop = Trajectory::new(
            rel.samples().iter().map(|(t, x)| (*t, anchor - *x)).collect(),
            true,
        )
        .expect("reflected loop stays valid");
        let charge = ChargeState::at_rest(anchor, p.charge);
        let r2 = phase_dual_electric(&fluxon_loop, &charge, p.flux, p.core_radius)?;

        let drift = Vec2::new(0.008, -0.003);
        let charge_traj = Trajectory::new(
            rel.samples()
                .iter()
                .map(|(t, x)| (*t, drift * *t + *x * 0.4))
                .collect(),
            false,
        )
        .expect("drifting trajectory is valid");
        let fluxon_traj = Trajectory::new(
            rel.samples()
                .iter()
                .map(|(t, x)| (*t, drift * *t - *x * 0.6))
                .collect(),
            false,
        )
        .expect("drifting trajectory is valid");
        let r3 =
            phase_field_momentum(&charge_traj, &fluxon_traj, p.charge, p.flux, p.core_radius)?;

        let expected = loop_phase(p.charge, p.flux, r1.winding);
        for r in [&r1, &r2, &r3] {
            max_deviation = max_deviation.max((r.phase - expected).abs());
        }
        max_pairwise = max_pairwise
            .max((r1.phase - r2.phase).abs())
            .max((r1.phase - r3.phase).abs())
            .max((r2.phase - r3.phase).abs());

        csv.row(&[
            CsvCell::Int(trial as i64),
            CsvCell::Int(r1.winding.into()),
            p.charge.into(),
            p.flux.into(),
            r1.phase.into(),
            r2.phase.into(),
            r3.phase.into(),
            expected.into(),
        ]);
    }

    let mut summary = summary_base(config);
    summary.scalars.insert("max_pairwise_gap".into(), max_pairwise);
    summary.scalars.insert("max_deviation".into(), max_deviation);
    summary.checks.push(Check::new(
        "phase routes agree pairwise within 1e-6 rad",
        max_pairwise < 1e-6,
        format!("max pairwise gap {max_pairwise:.3e}"),
    ));
    summary.checks.push(Check::new(
        "phases equal 2pi*winding*charge*flux within 1e-6 rad",
        max_deviation < 1e-6,
        format!("max deviation {max_deviation:.3e}"),
    ));
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

fn scatter(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let n = &config.numerics;
    let start = SystemState::new(
        ChargeState::new(
            Vec2::new(-5.0, p.impact_parameter),
            Vec2::new(p.speed, 0.0),
            p.charge,
            p.charge_mass,
        )?,
        FluxonState::new(
            p.fluxon_position,
            Vec2::ZERO,
            p.flux,
            p.core_radius,
            p.fluxon_mass,
        )?,
    );
    let result = integrate(&start, n.dt, n.n_steps)?;

    let mut csv = CsvTable::new(&[
        "step",
        "time",
        "charge_x",
        "charge_y",
        "charge_vx",
        "charge_vy",
        "fluxon_x",
        "fluxon_y",
        "separation",
    ]);
    for (step, s) in result.states.iter().enumerate() {
        csv.row(&[
            CsvCell::Int(step as i64),
            s.time.into(),
            s.charge.position.x.into(),
            s.charge.position.y.into(),
            s.charge.velocity.x.into(),
            s.charge.velocity.y.into(),
            s.fluxon.position.x.into(),
            s.fluxon.position.y.into(),
            s.charge.position.distance(s.fluxon.position).into(),
        ]);
    }

    let mut summary = summary_base(config);
    summary
        .scalars
        .insert("deflection_angle".into(), result.deflection_angle);
    summary.scalars.insert("energy_drift".into(), result.energy_drift);
    summary
        .scalars
        .insert("momentum_drift".into(), result.momentum_drift);
    summary.checks.push(Check::new(
        "deflection below 1e-6 rad (force-free motion)",
        result.deflection_angle.abs() < 1e-6,
        format!("deflection {:.3e} rad", result.deflection_angle),
    ));
    summary.checks.push(Check::new(
        "energy drift below 1e-10",
        result.energy_drift < 1e-10,
        format!("max |H(t)-H(0)| = {:.3e}", result.energy_drift),
    ));
    summary.checks.push(Check::new(
        "momentum drift below 1e-10",
        result.momentum_drift < 1e-10,
        format!("max |p+P drift| = {:.3e}", result.momentum_drift),
    ));
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

fn shield_classical(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let shield = CircularShield::new(p.shield_center, p.shield_radius)?;
    let fluxon = FluxonState::at_rest(p.fluxon_position, p.flux, p.core_radius);
    let probe = ChargeState::at_rest(
        p.shield_center + Vec2::new(p.orbit_radius, 0.0),
        p.charge,
    );
    let unshielded = e_field_charge(&probe, fluxon.position)?.norm();
    let traj = make_circular_trajectory(
        p.shield_center,
        p.orbit_radius,
        p.angular_velocity.abs().max(1e-3),
        config.numerics.n_samples,
        1.0,
    )?;

    let mut csv = CsvTable::new(&["nodes", "interior_field_ratio", "loop_phase"]);
    let mut ratio_at_256 = f64::NAN;
    let mut phase_at_256 = f64::NAN;
    for nodes in [64usize, 128, 256, 512] {
        let density = SurfaceDensity::induced(&probe, &shield, nodes)?;
        let e_net = shielded_field(&probe, &shield, &density, fluxon.position)?;
        let ratio = e_net.norm() / unshielded;
        let phase = classical_abc_phase(&traj, p.charge, &fluxon, Some(&shield), nodes)?;
        if nodes == 256 {
            ratio_at_256 = ratio;
            phase_at_256 = phase;
        }
        csv.row(&[CsvCell::Int(nodes as i64), ratio.into(), phase.into()]);
    }

    let mut summary = summary_base(config);
    summary
        .scalars
        .insert("interior_field_ratio_256".into(), ratio_at_256);
    summary.scalars.insert("loop_phase_256".into(), phase_at_256);
    summary.checks.push(Check::new(
        "interior net field below 1e-8 of the unshielded field at 256 nodes",
        ratio_at_256 < 1e-8,
        format!("ratio {ratio_at_256:.3e}"),
    ));
    summary.checks.push(Check::new(
        "shielded loop phase below 1e-6 rad",
        phase_at_256.abs() < 1e-6,
        format!("phase {phase_at_256:.3e} rad"),
    ));
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

fn config1(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let shield = CircularShield::new(p.shield_center, p.shield_radius)?;
    let fluxon = FluxonState::at_rest(p.shield_center, p.flux, p.core_radius);
    let pos = p.shield_center + Vec2::new(p.orbit_radius, 0.0);
    let vel = Vec2::new(0.0, p.orbit_radius * p.angular_velocity);
    let charge = ChargeState::new(pos, vel, p.charge, p.charge_mass)?;
    let (term1, term2) = config1_lagrangian_terms(&charge, &fluxon, &shield, config.numerics.nodes)?;
    let per_loop = if p.angular_velocity == 0.0 {
        0.0
    } else {
        (term1 + term2) * TAU / p.angular_velocity
    };

    // The quantized background (2m+q̃)/(2πR) is static for every m: it
    // carries no current and adds nothing to either term.
    let mut csv = CsvTable::new(&["m", "term1", "term2", "term_sum", "loop_phase"]);
    let mut max_phase: f64 = 0.0;
    for m in -p.max_excess_pairs..=p.max_excess_pairs {
        max_phase = max_phase.max(per_loop.abs());
        csv.row(&[
            CsvCell::Int(m),
            term1.into(),
            term2.into(),
            (term1 + term2).into(),
            per_loop.into(),
        ]);
    }

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut max_cancel: f64 = 0.0;
    for _ in 0..config.trials {
        let big_r = rng.gen_range(0.3..1.0);
        let orbit = big_r * rng.gen_range(1.15..3.0);
        let phi_dot = rng.gen_range(-0.9..0.9) * 0.09 / orbit;
        let q = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let flux = rng.gen_range(0.2..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let azimuth = rng.gen_range(0.0..TAU);
        let shield = CircularShield::new(Vec2::ZERO, big_r)?;
        let fluxon = FluxonState::at_rest(Vec2::ZERO, flux, big_r * 0.01);
        let pos = orbit * Vec2::from_angle(azimuth);
        let charge = ChargeState::new(pos, pos.perp_ccw() * phi_dot, q, 1.0)?;
        let (t1, t2) = config1_lagrangian_terms(&charge, &fluxon, &shield, 512)?;
        max_cancel = max_cancel.max((t1 + t2).abs());
    }

    let mut summary = summary_base(config);
    summary.scalars.insert("term1".into(), term1);
    summary.scalars.insert("term2".into(), term2);
    summary.scalars.insert("max_randomized_term_sum".into(), max_cancel);
    summary.scalars.insert("max_loop_phase".into(), max_phase);
    summary.checks.push(Check::new(
        "orbit coupling terms cancel within 1e-8 over randomized geometries",
        max_cancel < 1e-8,
        format!("max |term1+term2| = {max_cancel:.3e}"),
    ));
    summary.checks.push(Check::new(
        "caged-fluxon loop phase vanishes for every excess-pair count",
        max_phase < 1e-6,
        format!("max |phase| = {max_phase:.3e} rad"),
    ));
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

fn canonical_two_state(state: &ShieldState, charge_q: f64) -> bool {
    if charge_q != -1.0 {
        return false;
    }
    let weights: Vec<(i64, f64)> = state.weights().collect();
    weights.len() == 2
        && weights[0].0 == 0
        && weights[1].0 == 1
        && (weights[0].1 - 0.5).abs() < 1e-9
        && (weights[1].1 - 0.5).abs() < 1e-9
}

fn config2(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let state = p.shield_amplitudes.as_ref().expect("validated");
    let report = check_shielding(state, p.charge)?;

    let mut csv = CsvTable::new(&["flux", "re_u1", "im_u1", "abs_u1"]);
    let mut max_cos_gap: f64 = 0.0;
    let mut min_quarter_vis = f64::INFINITY;
    let mut saw_quarter = false;
    for &flux in &p.flux_grid {
        let u1 = phase_factor_u1(state, p.charge, flux)?;
        csv.row(&[flux.into(), u1.re.into(), u1.im.into(), u1.norm().into()]);
        let expected = Complex64::new((TAU * flux).cos(), 0.0);
        max_cos_gap = max_cos_gap.max((u1 - expected).norm());
        if (flux - 0.25).abs() < 1e-12 || (flux - 0.75).abs() < 1e-12 {
            saw_quarter = true;
            min_quarter_vis = min_quarter_vis.min(u1.norm());
        }
    }

    let mut summary = summary_base(config);
    summary
        .scalars
        .insert("mean_excess_charge".into(), report.mean_excess_charge);
    summary.checks.push(Check::new(
        "state satisfies the complete-shielding constraint",
        report.satisfies_ideal_shielding,
        format!("mean excess charge {:.3e} e", report.mean_excess_charge),
    ));
    if canonical_two_state(state, p.charge) {
        summary.scalars.insert("max_cosine_gap".into(), max_cos_gap);
        summary.checks.push(Check::new(
            "u1 equals cos(2pi*flux) within 1e-12",
            max_cos_gap < 1e-12,
            format!("max gap {max_cos_gap:.3e}"),
        ));
        if saw_quarter {
            summary.checks.push(Check::new(
                "visibility vanishes at quarter-flux points",
                min_quarter_vis < 1e-12,
                format!("min |u1| at quarter flux {min_quarter_vis:.3e}"),
            ));
        }
    }
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

fn config3(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut csv = CsvTable::new(&[
        "trial",
        "n",
        "re_u1",
        "im_u1",
        "re_expected",
        "im_expected",
        "deviation",
    ]);
    let mut max_deviation: f64 = 0.0;
    let mut u1_at_one_quantum = Complex64::new(1.0, 0.0);
    for trial in 0..config.trials {
        let state = random_constrained_state(&mut rng, p.charge, 3);
        for n in 0..=p.max_flux_quanta {
            let u1 = phase_factor_u1(&state, p.charge, 0.5 * n as f64)?;
            if trial == 0 && n == 1 {
                u1_at_one_quantum = u1;
            }
            let expected = Complex64::from_polar(1.0, PI * p.charge * n as f64);
            let deviation = (u1 - expected).norm();
            max_deviation = max_deviation.max(deviation);
            csv.row(&[
                CsvCell::Int(trial as i64),
                CsvCell::Int(n),
                u1.re.into(),
                u1.im.into(),
                expected.re.into(),
                expected.im.into(),
                deviation.into(),
            ]);
        }
    }

    let mut summary = summary_base(config);
    summary.scalars.insert("max_deviation".into(), max_deviation);
    if p.max_flux_quanta >= 1 {
        summary
            .scalars
            .insert("re_u1_one_quantum".into(), u1_at_one_quantum.re);
        summary
            .scalars
            .insert("im_u1_one_quantum".into(), u1_at_one_quantum.im);
    }
    summary.checks.push(Check::new(
        "u1 at quantized flux equals exp(i*pi*charge*n) for every state",
        max_deviation < 1e-12,
        format!("max |u1 - expected| = {max_deviation:.3e}"),
    ));
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

/// Semicircular detour from (−1, 0) to (1, 0), above or below the origin.
fn semicircle(upper: bool, n: usize) -> Trajectory {
    let mut samples = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let theta = PI - PI * k as f64 / n as f64;
        let y = if upper { theta.sin() } else { -theta.sin() };
        samples.push((k as f64, Vec2::new(theta.cos(), y)));
    }
    Trajectory::new(samples, false).expect("semicircle samples are valid")
}

fn fringe_scan(config: &ScenarioConfig) -> Result<RunOutcome, CliError> {
    let p = &config.physics;
    let n = config.numerics.n_samples;
    let state = p.shield_amplitudes.as_ref().expect("validated");
    let lower = semicircle(false, n);
    let upper = semicircle(true, n);

    let mut csv = CsvTable::new(&["flux", "relative_phase", "visibility", "re_u1", "im_u1"]);
    let mut max_vis_gap: f64 = 0.0;
    let mut max_vis: f64 = 0.0;
    for &flux in &p.flux_grid {
        let u1 = phase_factor_u1(state, p.charge, flux)?;
        let fluxon = FluxonState::at_rest(Vec2::ZERO, flux, p.core_radius);
        let fringe = two_path_fringe(&lower, &upper, p.charge, &fluxon, Some(u1))?;
        csv.row(&[
            flux.into(),
            fringe.relative_phase.into(),
            fringe.visibility.into(),
            u1.re.into(),
            u1.im.into(),
        ]);
        max_vis = max_vis.max(fringe.visibility);
        if canonical_two_state(state, p.charge) {
            max_vis_gap = max_vis_gap.max((fringe.visibility - (TAU * flux).cos().abs()).abs());
        }
    }

    let mut summary = summary_base(config);
    summary.scalars.insert("max_visibility".into(), max_vis);
    summary.checks.push(Check::new(
        "visibility never exceeds one",
        max_vis <= 1.0 + 1e-12,
        format!("max visibility {max_vis:.12}"),
    ));
    if canonical_two_state(state, p.charge) {
        summary
            .scalars
            .insert("max_visibility_gap".into(), max_vis_gap);
        summary.checks.push(Check::new(
            "visibility matches |cos(2pi*flux)| within 1e-12",
            max_vis_gap < 1e-12,
            format!("max gap {max_vis_gap:.3e}"),
        ));
    }
    Ok(RunOutcome {
        summary,
        csv: csv.finish(),
    })
}

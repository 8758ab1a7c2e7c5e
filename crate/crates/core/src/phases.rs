//! Interference-phase accumulation along trajectories in the three frames:
//! charge moving (vector-potential form), fluxon moving (dual electric
//! form), and both moving (field-momentum form in relative coordinates).
//! For an unshielded geometry all three equal 2π·winding·q̃·Φ̃.
//!
//! Line integrals use midpoint-rule polyline segments; the discretization
//! error falls off as O(1/n²) in the per-turn sample count.

use crate::error::{Error, Result};
use crate::fields2d::e_field_charge;
use crate::model::{winding_number, ChargeState, FluxonState, Trajectory, CLOSURE_TOL};
use crate::vec2::Vec2;
use num_complex::Complex64;

/// Which line-integral route produced a phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMethod {
    VectorPotential,
    DualElectric,
    FieldMomentum,
}

/// Accumulated phase, the loop's winding number, and the route used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    pub phase: f64,
    pub winding: i32,
    pub method: PhaseMethod,
}

/// Endpoint matching tolerance for two-path interference.
pub const ENDPOINT_TOL: f64 = 1e-9;

fn require_closed(traj: &Trajectory) -> Result<()> {
    if !traj.is_closed() {
        let gap = traj.first_position().distance(traj.last_position());
        return Err(Error::NonClosedTrajectory { gap });
    }
    Ok(())
}

fn require_core_clearance(traj: &Trajectory, core_center: Vec2, core_radius: f64) -> Result<()> {
    let dist = traj.min_distance_to(core_center);
    let required = 2.0 * core_radius;
    if dist <= required {
        return Err(Error::CoreApproach { dist, required });
    }
    Ok(())
}

fn midpoint_line_integral(traj: &Trajectory, field: impl Fn(Vec2) -> Vec2) -> f64 {
    traj.segments()
        .map(|(a, b)| field((a + b) * 0.5).dot(b - a))
        .sum()
}

/// Phase of a charge loop around a stationary fluxon: q̃·∮A·dx.
pub fn phase_vector_potential(
    traj: &Trajectory,
    charge_q: f64,
    fluxon: &FluxonState,
) -> Result<PhaseResult> {
    require_closed(traj)?;
    require_core_clearance(traj, fluxon.position, fluxon.core_radius)?;
    let winding = winding_number(traj, fluxon.position)?;
    let phase = midpoint_line_integral(traj, |x| {
        let delta = x - fluxon.position;
        delta.perp_ccw() * (charge_q * fluxon.flux / delta.norm_sq())
    });
    Ok(PhaseResult {
        phase,
        winding,
        method: PhaseMethod::VectorPotential,
    })
}

/// Phase of a fluxon loop around a stationary charge:
/// (Φ̃/2)·∮(ẑ × E_q)·dx̄ along the fluxon path.
pub fn phase_dual_electric(
    traj: &Trajectory,
    charge: &ChargeState,
    flux: f64,
    core_radius: f64,
) -> Result<PhaseResult> {
    require_closed(traj)?;
    require_core_clearance(traj, charge.position, core_radius)?;
    let winding = winding_number(traj, charge.position)?;
    let phase = midpoint_line_integral(traj, |x| {
        let e = e_field_charge(charge, x).expect("clearance checked above");
        e.perp_ccw() * (0.5 * flux)
    });
    Ok(PhaseResult {
        phase,
        winding,
        method: PhaseMethod::DualElectric,
    })
}

/// Phase from the field momentum in relative coordinates, ∮Π·d(r−R):
/// valid in frames where both particles move. Trajectories must carry
/// identical time stamps and the relative path must close.
pub fn phase_field_momentum(
    traj_charge: &Trajectory,
    traj_fluxon: &Trajectory,
    charge_q: f64,
    flux: f64,
    core_radius: f64,
) -> Result<PhaseResult> {
    if traj_charge.len() != traj_fluxon.len() {
        return Err(Error::DesynchronizedTrajectories(
            "trajectories differ in sample count",
        ));
    }
    let mut rel = Vec::with_capacity(traj_charge.len());
    for ((tc, pc), (tf, pf)) in traj_charge.samples().iter().zip(traj_fluxon.samples()) {
        if (tc - tf).abs() > 1e-9 * tc.abs().max(1.0) {
            return Err(Error::DesynchronizedTrajectories(
                "sample times do not match",
            ));
        }
        rel.push((*tc, *pc - *pf));
    }
    let gap = rel[0].1.distance(rel[rel.len() - 1].1);
    if gap > CLOSURE_TOL {
        return Err(Error::NonClosedTrajectory { gap });
    }
    let first = rel[0].1;
    rel.last_mut().expect("nonempty").1 = first;
    let rel_traj = Trajectory::new(rel, true)?;
    require_core_clearance(&rel_traj, Vec2::ZERO, core_radius)?;
    let winding = winding_number(&rel_traj, Vec2::ZERO)?;
    let phase = midpoint_line_integral(&rel_traj, |x| {
        // Π as a function of the relative position r − R.
        x.perp_ccw() * (charge_q * flux / x.norm_sq())
    });
    Ok(PhaseResult {
        phase,
        winding,
        method: PhaseMethod::FieldMomentum,
    })
}

/// Two-path interference outcome: the enclosed-loop phase difference and
/// the fringe visibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPathFringe {
    pub relative_phase: f64,
    pub visibility: f64,
}

/// Interfere two charge paths sharing endpoints around a fluxon, with the
/// amplitude model (e^{iφ_a} + u1·e^{iφ_b})/2. The relative phase is the
/// loop phase of path A followed by reversed path B; the visibility is
/// |shield_factor| when one is supplied, else 1.
pub fn two_path_fringe(
    path_a: &Trajectory,
    path_b: &Trajectory,
    charge_q: f64,
    fluxon: &FluxonState,
    shield_factor: Option<Complex64>,
) -> Result<TwoPathFringe> {
    let start_gap = path_a.first_position().distance(path_b.first_position());
    let end_gap = path_a.last_position().distance(path_b.last_position());
    if start_gap > ENDPOINT_TOL || end_gap > ENDPOINT_TOL {
        return Err(Error::EndpointMismatch { start_gap, end_gap });
    }

    // Stitch path A to reversed path B, re-parameterizing B's times.
    let mut samples: Vec<(f64, Vec2)> = path_a.samples().to_vec();
    let t_join = samples[samples.len() - 1].0;
    let b = path_b.samples();
    let t_b_end = b[b.len() - 1].0;
    for k in (0..b.len() - 1).rev() {
        samples.push((t_join + (t_b_end - b[k].0), b[k].1));
    }
    let first = samples[0].1;
    samples.last_mut().expect("nonempty").1 = first;
    let loop_traj = Trajectory::new(samples, true)?;

    let result = phase_vector_potential(&loop_traj, charge_q, fluxon)?;
    Ok(TwoPathFringe {
        relative_phase: result.phase,
        visibility: shield_factor.map_or(1.0, |u| u.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_circular_trajectory;
    use crate::quantum_shield::{phase_factor_u1, ShieldState};
    use std::f64::consts::{PI, TAU};

    const FINE: usize = 8192;

    #[test]
    fn charge_loop_accumulates_full_phase() {
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 1.0, 1e-4);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, FINE, 1.0).unwrap();
        let r = phase_vector_potential(&traj, 1.0, &fluxon).unwrap();
        assert_eq!(r.winding, 1);
        assert!((r.phase - TAU).abs() < 1e-6, "phase = {}", r.phase);
    }

    #[test]
    fn loop_not_enclosing_fluxon_is_phase_free() {
        let fluxon = FluxonState::at_rest(Vec2::new(5.0, 0.0), 1.0, 1e-4);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, FINE, 1.0).unwrap();
        let r = phase_vector_potential(&traj, 1.0, &fluxon).unwrap();
        assert_eq!(r.winding, 0);
        assert!(r.phase.abs() < 1e-6);
    }

    #[test]
    fn two_turns_double_the_phase() {
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 1.0, 1e-4);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, 2 * FINE, 2.0).unwrap();
        let r = phase_vector_potential(&traj, 1.0, &fluxon).unwrap();
        assert_eq!(r.winding, 2);
        assert!((r.phase - 2.0 * TAU).abs() < 1e-6);
    }

    #[test]
    fn fluxon_loop_accumulates_the_dual_phase() {
        let charge = ChargeState::at_rest(Vec2::ZERO, 1.0);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, FINE, 1.0).unwrap();
        let r = phase_dual_electric(&traj, &charge, 1.0, 1e-4).unwrap();
        assert_eq!(r.winding, 1);
        assert!((r.phase - TAU).abs() < 1e-6, "phase = {}", r.phase);
    }

    #[test]
    fn mirrored_fluxon_loop_flips_the_sign() {
        let charge = ChargeState::at_rest(Vec2::ZERO, 1.0);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, -0.05, FINE, 1.0).unwrap();
        let r = phase_dual_electric(&traj, &charge, 1.0, 1e-4).unwrap();
        assert_eq!(r.winding, -1);
        assert!((r.phase + TAU).abs() < 1e-6);
    }

    #[test]
    fn zero_charge_dual_phase_vanishes() {
        let charge = ChargeState::at_rest(Vec2::ZERO, 0.0);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, 1024, 1.0).unwrap();
        let r = phase_dual_electric(&traj, &charge, 1.0, 1e-4).unwrap();
        assert_eq!(r.phase, 0.0);
    }

    #[test]
    fn field_momentum_route_matches_dual_route() {
        let charge = ChargeState::at_rest(Vec2::ZERO, 1.0);
        let orbit = make_circular_trajectory(Vec2::ZERO, 1.3, 0.05, FINE, 1.0).unwrap();
        let fixed: Vec<(f64, Vec2)> = orbit
            .samples()
            .iter()
            .map(|(t, _)| (*t, Vec2::ZERO))
            .collect();
        let charge_traj = Trajectory::new(fixed, false).unwrap();
        let dual = phase_dual_electric(&orbit, &charge, 1.0, 1e-4).unwrap();
        let fm = phase_field_momentum(&charge_traj, &orbit, 1.0, 1.0, 1e-4).unwrap();
        // The relative loop r − R is the point reflection of the fluxon
        // orbit: same winding, same phase.
        assert_eq!(fm.winding, dual.winding);
        assert!(
            (fm.phase - dual.phase).abs() < 1e-8,
            "fm {} vs dual {}",
            fm.phase,
            dual.phase
        );
    }

    #[test]
    fn counter_rotating_pair_sees_relative_winding() {
        // Charge and fluxon orbit a common center on opposite sides; the
        // relative coordinate winds once CCW.
        let n = FINE;
        let mut charge_samples = Vec::with_capacity(n + 1);
        let mut fluxon_samples = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let t = k as f64;
            let theta = TAU * k as f64 / n as f64;
            let half = 0.8 * Vec2::from_angle(theta);
            let drift = Vec2::new(0.001 * t, -0.0005 * t);
            charge_samples.push((t, drift + half));
            fluxon_samples.push((t, drift - half));
        }
        charge_samples[n].1 = charge_samples[0].1 + Vec2::new(0.001 * n as f64, -0.0005 * n as f64);
        fluxon_samples[n].1 = fluxon_samples[0].1 + Vec2::new(0.001 * n as f64, -0.0005 * n as f64);
        let tc = Trajectory::new(charge_samples, false).unwrap();
        let tf = Trajectory::new(fluxon_samples, false).unwrap();
        let r = phase_field_momentum(&tc, &tf, 1.0, 1.0, 1e-4).unwrap();
        assert_eq!(r.winding, 1);
        assert!((r.phase - TAU).abs() < 1e-6, "phase = {}", r.phase);
    }

    #[test]
    fn parallel_transport_accumulates_nothing() {
        let n = 64;
        let offset = Vec2::new(1.5, 0.0);
        let mut charge_samples = Vec::with_capacity(n + 1);
        let mut fluxon_samples = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let t = k as f64;
            let p = Vec2::new(0.01 * t, (0.02 * t).sin());
            charge_samples.push((t, p + offset));
            fluxon_samples.push((t, p));
        }
        let tc = Trajectory::new(charge_samples, false).unwrap();
        let tf = Trajectory::new(fluxon_samples, false).unwrap();
        let r = phase_field_momentum(&tc, &tf, 1.0, 1.0, 1e-4).unwrap();
        assert_eq!(r.phase, 0.0);
        assert_eq!(r.winding, 0);
    }

    #[test]
    fn desynchronized_trajectories_rejected() {
        let a = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, 64, 1.0).unwrap();
        let b = make_circular_trajectory(Vec2::ZERO, 1.0, 0.06, 64, 1.0).unwrap();
        assert!(matches!(
            phase_field_momentum(&a, &b, 1.0, 1.0, 1e-4),
            Err(Error::DesynchronizedTrajectories(_))
        ));
    }

    #[test]
    fn core_approach_rejected() {
        let fluxon = FluxonState::at_rest(Vec2::new(1.0, 0.0), 1.0, 0.6);
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, 256, 1.0).unwrap();
        assert!(matches!(
            phase_vector_potential(&traj, 1.0, &fluxon),
            Err(Error::CoreApproach { .. })
        ));
    }

    /// Semicircular detour above/below a fluxon midway between endpoints.
    fn semicircle(upper: bool, n: usize) -> Trajectory {
        let mut samples = Vec::with_capacity(n + 1);
        for k in 0..=n {
            // From (−1, 0) to (1, 0).
            let theta = PI - PI * k as f64 / n as f64;
            let y = if upper { theta.sin() } else { -theta.sin() };
            samples.push((k as f64, Vec2::new(theta.cos(), y)));
        }
        Trajectory::new(samples, false).unwrap()
    }

    #[test]
    fn symmetric_paths_at_half_flux_interfere_at_pi() {
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 0.5, 1e-4);
        let lower = semicircle(false, FINE);
        let upper = semicircle(true, FINE);
        let fringe = two_path_fringe(&lower, &upper, 1.0, &fluxon, None).unwrap();
        assert!(
            (fringe.relative_phase - PI).abs() < 1e-6,
            "phase = {}",
            fringe.relative_phase
        );
        assert_eq!(fringe.visibility, 1.0);
    }

    #[test]
    fn quarter_flux_with_two_state_shield_dephases() {
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 0.25, 1e-4);
        let state = ShieldState::two_state_half_half();
        let u1 = phase_factor_u1(&state, -1.0, 0.25).unwrap();
        let lower = semicircle(false, 512);
        let upper = semicircle(true, 512);
        let fringe = two_path_fringe(&lower, &upper, -1.0, &fluxon, Some(u1)).unwrap();
        assert!(fringe.visibility < 1e-12, "visibility = {}", fringe.visibility);
    }

    #[test]
    fn zero_flux_two_path_is_trivial() {
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 0.0, 1e-4);
        let lower = semicircle(false, 512);
        let upper = semicircle(true, 512);
        let fringe = two_path_fringe(&lower, &upper, 1.0, &fluxon, None).unwrap();
        assert_eq!(fringe.relative_phase, 0.0);
        assert_eq!(fringe.visibility, 1.0);
    }

    #[test]
    fn mismatched_endpoints_rejected() {
        let lower = semicircle(false, 64);
        let shifted: Vec<(f64, Vec2)> = semicircle(true, 64)
            .samples()
            .iter()
            .map(|(t, p)| (*t, *p + Vec2::new(0.1, 0.0)))
            .collect();
        let shifted = Trajectory::new(shifted, false).unwrap();
        assert!(matches!(
            two_path_fringe(&lower, &shifted, 1.0, &FluxonState::at_rest(Vec2::ZERO, 0.5, 1e-4), None),
            Err(Error::EndpointMismatch { .. })
        ));
    }
}

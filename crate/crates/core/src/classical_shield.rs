//! Ideal grounded conductor between charge and fluxon: induced surface
//! density, interior field cancellation, surface currents, and the
//! circular-orbit term cancellation.
//!
//! Only circular shields are supported; the induced-density closed form is
//! circle-specific. The shield is grounded: the total induced charge is
//! −q̃ for any exterior charge, and the interior net field vanishes.

use crate::error::{Error, Result};
use crate::fields2d::e_field_charge;
use crate::model::{ChargeState, FluxonState, Trajectory};
use crate::vec2::Vec2;
use std::f64::consts::TAU;

use num_complex::Complex64;

/// Minimum distance of sources and evaluation points from the surface.
pub const SURFACE_GAP: f64 = 1e-6;

/// A grounded circular conducting shield.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularShield {
    pub center: Vec2,
    pub radius: f64,
}

impl CircularShield {
    pub fn new(center: Vec2, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::NonPositive {
                name: "radius",
                value: radius,
            });
        }
        Ok(Self { center, radius })
    }

    /// Surface point at global azimuth `phi`.
    fn surface_point(&self, phi: f64) -> Vec2 {
        self.center + self.radius * Vec2::from_angle(phi)
    }
}

/// Induced surface charge density per unit arc length, sampled at N
/// uniformly spaced global azimuths φ_j = 2πj/N.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceDensity {
    values: Vec<f64>,
}

impl SurfaceDensity {
    /// Density induced on `shield` by an exterior charge, sampled on N nodes.
    pub fn induced(charge: &ChargeState, shield: &CircularShield, nodes: usize) -> Result<Self> {
        if nodes < 4 {
            return Err(Error::BadDiscretization { got: nodes, need: 4 });
        }
        let charge_azimuth = (charge.position - shield.center).angle();
        let values = (0..nodes)
            .map(|j| {
                let phi_global = TAU * j as f64 / nodes as f64;
                induced_density(charge, shield, phi_global - charge_azimuth)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::BadDiscretization {
                got: values.len(),
                need: 4,
            });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nodes(&self) -> usize {
        self.values.len()
    }

    /// Total induced charge ∮ δn R dφ by midpoint quadrature.
    pub fn total_charge(&self, shield: &CircularShield) -> f64 {
        let dphi = TAU / self.nodes() as f64;
        self.values.iter().sum::<f64>() * shield.radius * dphi
    }
}

/// Closed-form induced density at angle `phi` measured from the charge's
/// azimuth: δn(φ) = −(q̃/2πR)·(r²−R²)/(r²+R²−2rR·cos φ).
pub fn induced_density(charge: &ChargeState, shield: &CircularShield, phi: f64) -> Result<f64> {
    let r = (charge.position - shield.center).norm();
    let big_r = shield.radius;
    if r <= big_r + SURFACE_GAP {
        return Err(Error::SourceInsideShield {
            dist: r,
            radius: big_r,
        });
    }
    let kernel = (r * r - big_r * big_r) / (r * r + big_r * big_r - 2.0 * r * big_r * phi.cos());
    Ok(-charge.charge / (TAU * big_r) * kernel)
}

/// Net electric field E_q + E_s at a point strictly inside the shield,
/// with E_s the midpoint-quadrature sum of the node contributions. The
/// magnitude converges to zero with the node count.
pub fn shielded_field(
    charge: &ChargeState,
    shield: &CircularShield,
    density: &SurfaceDensity,
    x: Vec2,
) -> Result<Vec2> {
    let rho = (x - shield.center).norm();
    if rho >= shield.radius - SURFACE_GAP {
        return Err(Error::EvaluationOnSurface);
    }
    let r = (charge.position - shield.center).norm();
    if r <= shield.radius + SURFACE_GAP {
        return Err(Error::SourceInsideShield {
            dist: r,
            radius: shield.radius,
        });
    }
    let n = density.nodes();
    let dq = shield.radius * TAU / n as f64;
    let mut e = e_field_charge(charge, x)?;
    for (j, &dn) in density.values().iter().enumerate() {
        let s = shield.surface_point(TAU * j as f64 / n as f64);
        let delta = x - s;
        e += delta * (2.0 * dn * dq / delta.norm_sq());
    }
    Ok(e)
}

/// Phase accumulated by a closed charge loop with the field momentum built
/// from the shielded net field at the fluxon. With a shield present
/// (fluxon inside, loop outside) the result vanishes; with `shield = None`
/// it reduces to the unshielded loop phase 2π·winding·q̃·Φ̃.
pub fn classical_abc_phase(
    charge_traj: &Trajectory,
    charge_q: f64,
    fluxon: &FluxonState,
    shield: Option<&CircularShield>,
    nodes: usize,
) -> Result<f64> {
    if !charge_traj.is_closed() {
        let gap = charge_traj
            .first_position()
            .distance(charge_traj.last_position());
        return Err(Error::NonClosedTrajectory { gap });
    }
    if let Some(shield) = shield {
        let fluxon_dist = (fluxon.position - shield.center).norm();
        if fluxon_dist + fluxon.core_radius >= shield.radius - SURFACE_GAP {
            return Err(Error::GeometryViolation(
                "fluxon core must lie strictly inside the shield",
            ));
        }
        for (_, p) in charge_traj.samples() {
            if (*p - shield.center).norm() <= shield.radius + SURFACE_GAP {
                return Err(Error::GeometryViolation(
                    "charge trajectory must stay outside the shield",
                ));
            }
        }
    }

    let mut phase = 0.0;
    for (a, b) in charge_traj.segments() {
        let mid = (a + b) * 0.5;
        let charge = ChargeState::at_rest(mid, charge_q);
        let e_net = match shield {
            Some(shield) => {
                let density = SurfaceDensity::induced(&charge, shield, nodes)?;
                shielded_field(&charge, shield, &density, fluxon.position)?
            }
            None => e_field_charge(&charge, fluxon.position)?,
        };
        // Core average of a harmonic field equals its center value, so the
        // field momentum is (Φ̃/2)·(E_y, −E_x) at the fluxon position.
        let pi = e_net.perp_cw() * (0.5 * fluxon.flux);
        phase += pi.dot(b - a);
    }
    Ok(phase)
}

/// Surface currents from the continuity equation on the ring:
/// ∂δn/∂t + (1/R)∂K/∂φ = 0, integrated spectrally in φ with the gauge
/// ∮K dφ = 0. Snapshots must be uniformly spaced in time; the time
/// derivative uses 4th-order central differences in the interior and
/// lower-order stencils at the ends.
///
/// Returns one current profile (per-node K) per snapshot.
pub fn surface_current(
    times: &[f64],
    densities: &[SurfaceDensity],
    shield: &CircularShield,
) -> Result<Vec<Vec<f64>>> {
    if times.len() != densities.len() || times.len() < 2 {
        return Err(Error::DesynchronizedTrajectories(
            "need equal-length times and densities with at least two snapshots",
        ));
    }
    let n = densities[0].nodes();
    if densities.iter().any(|d| d.nodes() != n) {
        return Err(Error::DesynchronizedTrajectories(
            "all snapshots must share the node count",
        ));
    }
    let dt = times[1] - times[0];
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonPositive {
            name: "snapshot spacing",
            value: dt,
        });
    }
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.abs() {
            return Err(Error::DesynchronizedTrajectories(
                "snapshots must be uniformly spaced in time",
            ));
        }
    }

    // Grounded shield with the source outside: total charge is constant.
    let q0 = densities[0].total_charge(shield);
    let drift = densities
        .iter()
        .map(|d| (d.total_charge(shield) - q0).abs())
        .fold(0.0, f64::max);
    if drift > 1e-8 * q0.abs().max(1.0) {
        return Err(Error::ChargeNotConserved { drift });
    }

    let n_t = times.len();
    let mut currents = Vec::with_capacity(n_t);
    for i in 0..n_t {
        let ddt: Vec<f64> = (0..n)
            .map(|j| time_derivative(densities, i, j, dt))
            .collect();
        currents.push(spectral_ring_integral(&ddt, shield.radius));
    }
    Ok(currents)
}

fn time_derivative(densities: &[SurfaceDensity], i: usize, j: usize, dt: f64) -> f64 {
    let f = |k: usize| densities[k].values()[j];
    let n = densities.len();
    if n >= 5 && i >= 2 && i + 2 < n {
        (-f(i + 2) + 8.0 * f(i + 1) - 8.0 * f(i - 1) + f(i - 2)) / (12.0 * dt)
    } else if i >= 1 && i + 1 < n {
        (f(i + 1) - f(i - 1)) / (2.0 * dt)
    } else if i == 0 {
        if n >= 3 {
            (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * dt)
        } else {
            (f(1) - f(0)) / dt
        }
    } else if n >= 3 {
        (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * dt)
    } else {
        (f(n - 1) - f(n - 2)) / dt
    }
}

/// Solve (1/R)∂K/∂φ = −d(φ) on the periodic ring via the Fourier series,
/// dropping the mean mode (charge conservation) and fixing ∮K dφ = 0.
fn spectral_ring_integral(d: &[f64], radius: f64) -> Vec<f64> {
    let n = d.len();
    let nf = n as f64;
    let mut coef = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in coef.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &dj) in d.iter().enumerate() {
            let angle = -TAU * (k * j) as f64 / nf;
            acc += Complex64::from_polar(dj, angle);
        }
        *c = acc / nf;
    }
    let mut out = vec![0.0; n];
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in coef.iter().enumerate() {
            if k == 0 || (n.is_multiple_of(2) && k == n / 2) {
                continue; // mean mode removed; Nyquist has no consistent sign
            }
            let k_signed = if k <= n / 2 {
                k as f64
            } else {
                k as f64 - nf
            };
            let ik = Complex64::new(0.0, k_signed);
            let phase = Complex64::from_polar(1.0, TAU * (k * j) as f64 / nf);
            acc += c / ik * phase;
        }
        *o = -radius * acc.re;
    }
    let mean = out.iter().sum::<f64>() / nf;
    for o in &mut out {
        *o -= mean;
    }
    out
}

/// The two circular-orbit interaction terms: the charge-fluxon coupling
/// q̃·ṙ·A = q̃Φ̃φ̇ and the shield-fluxon coupling ∮K·A R dφ = −q̃Φ̃φ̇,
/// which cancel.
///
/// The surface current here is the physical rigid-rotation current
/// K = δn·R·φ̇ (the induced pattern co-rotates with the orbiting charge);
/// unlike `surface_current`'s ∮K dφ = 0 gauge it carries a net
/// circulation, and term 2 depends on that choice.
pub fn config1_lagrangian_terms(
    charge: &ChargeState,
    fluxon: &FluxonState,
    shield: &CircularShield,
    nodes: usize,
) -> Result<(f64, f64)> {
    if (fluxon.position - shield.center).norm() > 1e-9 {
        return Err(Error::GeometryViolation(
            "fluxon must sit at the shield center",
        ));
    }
    if fluxon.core_radius >= shield.radius {
        return Err(Error::GeometryViolation(
            "fluxon core must fit inside the shield",
        ));
    }
    let rho = charge.position - shield.center;
    let r = rho.norm();
    if r <= shield.radius + SURFACE_GAP {
        return Err(Error::SourceInsideShield {
            dist: r,
            radius: shield.radius,
        });
    }
    // Circular orbit: no radial velocity component.
    let speed = charge.velocity.norm();
    if speed > 0.0 && rho.dot(charge.velocity).abs() > 1e-9 * r * speed.max(1.0) {
        return Err(Error::GeometryViolation(
            "charge velocity must be tangential (circular orbit)",
        ));
    }
    let phi_dot = rho.cross(charge.velocity) / (r * r);

    // Term 1: q̃ ṙ·A at the charge; A = (Φ̃/r) φ̂ for the centered fluxon.
    let a_at_charge = rho.perp_ccw() * (fluxon.flux / (r * r));
    let term1 = charge.charge * charge.velocity.dot(a_at_charge);

    // Term 2: ∮ K (A·φ̂) R dφ with K = δn·v_c and v_c = R φ̇.
    let density = SurfaceDensity::induced(charge, shield, nodes)?;
    let v_c = shield.radius * phi_dot;
    let a_phi_surface = fluxon.flux / shield.radius;
    let dphi = TAU / nodes as f64;
    let term2 = density
        .values()
        .iter()
        .map(|dn| dn * v_c * a_phi_surface * shield.radius * dphi)
        .sum::<f64>();

    Ok((term1, term2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_circular_trajectory;

    fn unit_shield() -> CircularShield {
        CircularShield::new(Vec2::ZERO, 1.0).unwrap()
    }

    #[test]
    fn density_closed_form_values() {
        let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 1.0);
        let shield = unit_shield();
        let front = induced_density(&charge, &shield, 0.0).unwrap();
        assert!((front - (-0.477_464_829_275_686_06)).abs() < 1e-15, "{front}");
        let back = induced_density(&charge, &shield, std::f64::consts::PI).unwrap();
        assert!((back - (-0.053_051_647_697_298_45)).abs() < 1e-15, "{back}");
    }

    #[test]
    fn total_induced_charge_is_minus_q() {
        let shield = unit_shield();
        for r in [1.5, 2.0, 7.0] {
            let charge = ChargeState::at_rest(Vec2::new(r, 0.3), 1.0);
            let density = SurfaceDensity::induced(&charge, &shield, 256).unwrap();
            let total = density.total_charge(&shield);
            assert!((total + 1.0).abs() < 1e-8, "r = {r}: total = {total}");
        }
    }

    #[test]
    fn poisson_kernel_normalizes_to_one() {
        let big_r = 1.0;
        for r in [1.1, 1.6, 3.0, 10.0] {
            let n = 512;
            let sum: f64 = (0..n)
                .map(|j| {
                    let phi = TAU * j as f64 / n as f64;
                    (r * r - big_r * big_r)
                        / (r * r + big_r * big_r - 2.0 * r * big_r * phi.cos())
                })
                .sum();
            let avg = sum / n as f64;
            assert!((avg - 1.0).abs() < 1e-10, "r = {r}: avg = {avg}");
        }
    }

    #[test]
    fn source_inside_shield_rejected() {
        let charge = ChargeState::at_rest(Vec2::new(0.5, 0.0), 1.0);
        assert!(matches!(
            induced_density(&charge, &unit_shield(), 0.0),
            Err(Error::SourceInsideShield { .. })
        ));
    }

    #[test]
    fn interior_field_cancels_at_center() {
        let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 1.0);
        let shield = unit_shield();
        let density = SurfaceDensity::induced(&charge, &shield, 256).unwrap();
        let e = shielded_field(&charge, &shield, &density, Vec2::ZERO).unwrap();
        assert!(e.norm() < 1e-8, "|E| = {}", e.norm());
    }

    #[test]
    fn interior_field_zero_charge() {
        let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 0.0);
        let shield = unit_shield();
        let density = SurfaceDensity::induced(&charge, &shield, 64).unwrap();
        let e = shielded_field(&charge, &shield, &density, Vec2::new(0.2, 0.1)).unwrap();
        assert_eq!(e, Vec2::ZERO);
    }

    #[test]
    fn interior_field_near_surface() {
        let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 1.0);
        let shield = unit_shield();
        let density = SurfaceDensity::induced(&charge, &shield, 1024).unwrap();
        // Generic azimuths; the charge-facing neighborhood, where the
        // density peaks, needs about twice the node count for the same bound.
        for azimuth in [1.0, std::f64::consts::FRAC_PI_2, 3.0, std::f64::consts::PI] {
            let x = 0.99 * Vec2::from_angle(azimuth);
            let e = shielded_field(&charge, &shield, &density, x).unwrap();
            assert!(e.norm() < 1e-4, "azimuth {azimuth}: |E| = {}", e.norm());
        }
        let density = SurfaceDensity::induced(&charge, &shield, 2048).unwrap();
        let facing = shielded_field(&charge, &shield, &density, Vec2::new(0.99, 0.0)).unwrap();
        assert!(facing.norm() < 1e-4, "facing point: |E| = {}", facing.norm());
    }

    #[test]
    fn interior_nullity_improves_with_nodes() {
        let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 1.0);
        let shield = unit_shield();
        let x = 0.95 * Vec2::from_angle(2.2);
        let mut prev = f64::INFINITY;
        for n in [64usize, 128, 256, 512] {
            let density = SurfaceDensity::induced(&charge, &shield, n).unwrap();
            let e = shielded_field(&charge, &shield, &density, x).unwrap().norm();
            assert!(e < prev, "N = {n}: |E| = {e} did not decrease from {prev}");
            prev = e;
        }
    }

    #[test]
    fn evaluation_on_surface_rejected() {
        let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 1.0);
        let shield = unit_shield();
        let density = SurfaceDensity::induced(&charge, &shield, 64).unwrap();
        assert!(matches!(
            shielded_field(&charge, &shield, &density, Vec2::new(1.0, 0.0)),
            Err(Error::EvaluationOnSurface)
        ));
    }

    #[test]
    fn shielded_loop_phase_vanishes() {
        let shield = unit_shield();
        let fluxon = FluxonState::at_rest(Vec2::new(0.2, 0.1), 1.0, 0.01);
        let traj = make_circular_trajectory(Vec2::ZERO, 2.0, 0.04, 720, 1.0).unwrap();
        let phase = classical_abc_phase(&traj, 1.0, &fluxon, Some(&shield), 256).unwrap();
        assert!(phase.abs() < 1e-6, "phase = {phase}");
    }

    #[test]
    fn unshielded_loop_phase_recovers_full_phase() {
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 1.0, 0.01);
        let traj = make_circular_trajectory(Vec2::ZERO, 2.0, 0.04, 8192, 1.0).unwrap();
        let phase = classical_abc_phase(&traj, 1.0, &fluxon, None, 256).unwrap();
        assert!((phase - TAU).abs() < 1e-6, "phase = {phase}");
    }

    #[test]
    fn loop_not_enclosing_shield_gives_zero() {
        let shield = unit_shield();
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 1.0, 0.01);
        let traj =
            make_circular_trajectory(Vec2::new(5.0, 0.0), 0.5, 0.04, 720, 1.0).unwrap();
        let phase = classical_abc_phase(&traj, 1.0, &fluxon, Some(&shield), 128).unwrap();
        assert!(phase.abs() < 1e-8, "phase = {phase}");
    }

    #[test]
    fn trajectory_through_shield_rejected() {
        let shield = unit_shield();
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 1.0, 0.01);
        let traj = make_circular_trajectory(Vec2::new(1.0, 0.0), 0.5, 0.04, 64, 1.0).unwrap();
        assert!(matches!(
            classical_abc_phase(&traj, 1.0, &fluxon, Some(&shield), 64),
            Err(Error::GeometryViolation(_))
        ));
    }

    #[test]
    fn shielded_phase_invariant_under_reparameterization() {
        let shield = unit_shield();
        let fluxon = FluxonState::at_rest(Vec2::new(0.2, 0.1), 1.0, 0.01);
        let coarse = make_circular_trajectory(Vec2::ZERO, 2.0, 0.04, 360, 1.0).unwrap();
        let retimed = Trajectory::new(
            coarse
                .samples()
                .iter()
                .map(|(t, p)| (t.powi(2) + t, *p))
                .collect(),
            true,
        )
        .unwrap();
        let fine = make_circular_trajectory(Vec2::ZERO, 2.0, 0.04, 720, 1.0).unwrap();
        let a = classical_abc_phase(&coarse, 1.0, &fluxon, Some(&shield), 128).unwrap();
        let b = classical_abc_phase(&retimed, 1.0, &fluxon, Some(&shield), 128).unwrap();
        let c = classical_abc_phase(&fine, 1.0, &fluxon, Some(&shield), 128).unwrap();
        assert_eq!(a, b, "time stamps do not enter the line integral");
        assert!(a.abs() < 1e-6 && c.abs() < 1e-6);
    }

    use crate::model::Trajectory;

    fn orbit_snapshots(
        shield: &CircularShield,
        r: f64,
        omega: f64,
        dt: f64,
        count: usize,
        nodes: usize,
    ) -> (Vec<f64>, Vec<SurfaceDensity>) {
        let mut times = Vec::with_capacity(count);
        let mut frames = Vec::with_capacity(count);
        for i in 0..count {
            let t = dt * i as f64;
            let pos = shield.center + r * Vec2::from_angle(omega * t);
            let charge = ChargeState::at_rest(pos, 1.0);
            times.push(t);
            frames.push(SurfaceDensity::induced(&charge, shield, nodes).unwrap());
        }
        (times, frames)
    }

    #[test]
    fn static_charge_has_no_surface_current() {
        let shield = unit_shield();
        let (times, frames) = orbit_snapshots(&shield, 2.0, 0.0, 0.1, 7, 64);
        let currents = surface_current(&times, &frames, &shield).unwrap();
        for frame in currents {
            for k in frame {
                assert!(k.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn orbiting_charge_current_matches_rigid_rotation() {
        let shield = unit_shield();
        let omega = 0.1;
        let nodes = 128;
        let (times, frames) = orbit_snapshots(&shield, 2.0, omega, 0.01, 9, nodes);
        let currents = surface_current(&times, &frames, &shield).unwrap();
        // Interior snapshot with the 4th-order stencil available.
        let i = 4;
        let mean = frames[i].values().iter().sum::<f64>() / nodes as f64;
        for (j, &k) in currents[i].iter().enumerate() {
            let expected = shield.radius * omega * (frames[i].values()[j] - mean);
            assert!(
                (k - expected).abs() < 1e-8,
                "node {j}: K = {k}, expected {expected}"
            );
        }
    }

    #[test]
    fn surface_current_is_linear_in_omega() {
        let shield = unit_shield();
        let nodes = 64;
        let (times1, frames1) = orbit_snapshots(&shield, 2.0, 0.05, 0.01, 7, nodes);
        let (_, frames2) = orbit_snapshots(&shield, 2.0, 0.10, 0.005, 7, nodes);
        // Same angular positions sampled twice as fast: K should double.
        let times2: Vec<f64> = times1.iter().map(|t| t * 0.5).collect();
        let c1 = surface_current(&times1, &frames1, &shield).unwrap();
        let c2 = surface_current(&times2, &frames2, &shield).unwrap();
        for (a, b) in c1[3].iter().zip(&c2[3]) {
            assert!((2.0 * a - b).abs() < 1e-8, "K1 = {a}, K2 = {b}");
        }
    }

    #[test]
    fn charge_conservation_enforced() {
        let shield = unit_shield();
        let (times, mut frames) = orbit_snapshots(&shield, 2.0, 0.1, 0.01, 7, 64);
        let mut broken = frames[3].values().to_vec();
        for v in &mut broken {
            *v += 1e-3;
        }
        frames[3] = SurfaceDensity::from_values(broken).unwrap();
        assert!(matches!(
            surface_current(&times, &frames, &shield),
            Err(Error::ChargeNotConserved { .. })
        ));
    }

    #[test]
    fn circular_orbit_terms_cancel() {
        let shield = CircularShield::new(Vec2::ZERO, 0.5).unwrap();
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 0.5, 0.01);
        // Orbit radius 0.8, angular velocity 0.1: speed 0.08 under the cap.
        let pos = Vec2::new(0.8, 0.0);
        let vel = Vec2::new(0.0, 0.08);
        let charge = ChargeState::new(pos, vel, 1.0, 1.0).unwrap();
        let (t1, t2) = config1_lagrangian_terms(&charge, &fluxon, &shield, 256).unwrap();
        assert!((t1 - 0.05).abs() < 1e-12, "term1 = {t1}");
        assert!((t2 + 0.05).abs() < 1e-12, "term2 = {t2}");
        assert!((t1 + t2).abs() < 1e-8);
    }

    #[test]
    fn zero_angular_velocity_gives_zero_terms() {
        let shield = CircularShield::new(Vec2::ZERO, 0.5).unwrap();
        let fluxon = FluxonState::at_rest(Vec2::ZERO, 0.5, 0.01);
        let charge = ChargeState::at_rest(Vec2::new(0.8, 0.0), 1.0);
        let (t1, t2) = config1_lagrangian_terms(&charge, &fluxon, &shield, 128).unwrap();
        assert_eq!((t1, t2), (0.0, 0.0));
    }

    #[test]
    fn off_center_fluxon_rejected() {
        let shield = CircularShield::new(Vec2::ZERO, 0.5).unwrap();
        let fluxon = FluxonState::at_rest(Vec2::new(0.1, 0.0), 0.5, 0.01);
        let charge = ChargeState::at_rest(Vec2::new(0.8, 0.0), 1.0);
        assert!(matches!(
            config1_lagrangian_terms(&charge, &fluxon, &shield, 64),
            Err(Error::GeometryViolation(_))
        ));
    }
}

//! Two-body equations of motion and their integration.
//!
//! Outside the fluxon core the Euler-Lagrange equations of
//! L = ½mṙ² + ½MṘ² + (ṙ−Ṙ)·Π(r−R) reduce to velocity × curl terms, and
//! curl Π = 0 there, so the accelerations vanish identically: the motion is
//! force-free. The accelerations are hard-coded to that curl-form result;
//! the finite-difference Lagrangian check lives in the tests, not in the
//! production path.

use crate::error::{Error, Result};
use crate::interaction::{canonical_momenta, hamiltonian};
use crate::model::{ChargeState, FluxonState};
use crate::vec2::Vec2;

/// Joint state of the charge and the fluxon at a given time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemState {
    pub charge: ChargeState,
    pub fluxon: FluxonState,
    pub time: f64,
}

impl SystemState {
    pub fn new(charge: ChargeState, fluxon: FluxonState) -> Self {
        Self {
            charge,
            fluxon,
            time: 0.0,
        }
    }

    fn separation(&self) -> f64 {
        self.charge.position.distance(self.fluxon.position)
    }
}

/// Time series produced by `integrate`, with conservation diagnostics.
///
/// The drift fields are maxima of |H(t) − H(0)| and |p+P − (p+P)(0)| over
/// the run; `deflection_angle` is the signed angle between the charge's
/// final and initial velocities.
#[derive(Debug, Clone)]
pub struct IntegrationResult {
    pub states: Vec<SystemState>,
    pub deflection_angle: f64,
    pub energy_drift: f64,
    pub momentum_drift: f64,
}

/// Accelerations of (charge, fluxon) from the Euler-Lagrange equations.
/// Zero everywhere outside the core; inside is out of the model's domain.
pub fn equations_of_motion(state: &SystemState) -> Result<(Vec2, Vec2)> {
    let d = state.separation();
    if d <= state.fluxon.core_radius {
        return Err(Error::CoreOverlap {
            separation: d,
            core_radius: state.fluxon.core_radius,
        });
    }
    Ok((Vec2::ZERO, Vec2::ZERO))
}

/// One classical 4th-order Runge-Kutta step.
pub fn rk4_step<const N: usize>(
    t: f64,
    y: &[f64; N],
    dt: f64,
    deriv: &impl Fn(f64, &[f64; N]) -> [f64; N],
) -> [f64; N] {
    let k1 = deriv(t, y);
    let k2 = deriv(t + 0.5 * dt, &combine(y, &k1, 0.5 * dt));
    let k3 = deriv(t + 0.5 * dt, &combine(y, &k2, 0.5 * dt));
    let k4 = deriv(t + dt, &combine(y, &k3, dt));
    let mut out = *y;
    for i in 0..N {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn combine<const N: usize>(y: &[f64; N], k: &[f64; N], h: f64) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += h * k[i];
    }
    out
}

type Packed = [f64; 8];

fn pack(s: &SystemState) -> Packed {
    [
        s.charge.position.x,
        s.charge.position.y,
        s.charge.velocity.x,
        s.charge.velocity.y,
        s.fluxon.position.x,
        s.fluxon.position.y,
        s.fluxon.velocity.x,
        s.fluxon.velocity.y,
    ]
}

fn unpack(y: &Packed, template: &SystemState, time: f64) -> SystemState {
    let mut s = *template;
    s.charge.position = Vec2::new(y[0], y[1]);
    s.charge.velocity = Vec2::new(y[2], y[3]);
    s.fluxon.position = Vec2::new(y[4], y[5]);
    s.fluxon.velocity = Vec2::new(y[6], y[7]);
    s.time = time;
    s
}

/// Minimum charge-fluxon separation along one straight-line step in
/// relative coordinates.
fn min_separation_over_step(s0: Vec2, s1: Vec2) -> f64 {
    let ds = s1 - s0;
    let len_sq = ds.norm_sq();
    if len_sq == 0.0 {
        return s0.norm();
    }
    let t = (-s0.dot(ds) / len_sq).clamp(0.0, 1.0);
    (s0 + ds * t).norm()
}

/// Integrate the two-body system with RK4 and collect diagnostics.
///
/// Errors with `CoreEntry` if the relative trajectory would cross the
/// fluxon core at any point of a step.
pub fn integrate(initial: &SystemState, dt: f64, n_steps: usize) -> Result<IntegrationResult> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonPositive {
            name: "dt",
            value: dt,
        });
    }
    equations_of_motion(initial)?;

    let deriv = |_t: f64, y: &Packed| -> Packed {
        // Force-free region: accelerations vanish (curl Π = 0).
        [y[2], y[3], 0.0, 0.0, y[6], y[7], 0.0, 0.0]
    };

    let (p0, pf0) = canonical_momenta(&initial.charge, &initial.fluxon)?;
    let h0 = hamiltonian(&initial.charge, &initial.fluxon, p0, pf0)?;
    let mech0 = initial.charge.velocity * initial.charge.mass
        + initial.fluxon.velocity * initial.fluxon.mass;

    let mut states = Vec::with_capacity(n_steps + 1);
    states.push(*initial);
    let mut y = pack(initial);
    let mut t = initial.time;
    let mut energy_drift: f64 = 0.0;
    let mut momentum_drift: f64 = 0.0;

    for _ in 0..n_steps {
        let s0 = Vec2::new(y[0] - y[4], y[1] - y[5]);
        let y_next = rk4_step(t, &y, dt, &deriv);
        let s1 = Vec2::new(y_next[0] - y_next[4], y_next[1] - y_next[5]);
        if min_separation_over_step(s0, s1) <= initial.fluxon.core_radius {
            return Err(Error::CoreEntry { time: t });
        }
        y = y_next;
        t += dt;
        let state = unpack(&y, initial, t);

        let (p, pf) = canonical_momenta(&state.charge, &state.fluxon)?;
        let h = hamiltonian(&state.charge, &state.fluxon, p, pf)?;
        energy_drift = energy_drift.max((h - h0).abs());
        let mech =
            state.charge.velocity * state.charge.mass + state.fluxon.velocity * state.fluxon.mass;
        momentum_drift = momentum_drift.max((mech - mech0).norm());

        states.push(state);
    }

    let v0 = initial.charge.velocity;
    let v1 = states.last().expect("nonempty").charge.velocity;
    let deflection_angle = if v0.norm() == 0.0 || v1.norm() == 0.0 {
        0.0
    } else {
        v0.cross(v1).atan2(v0.dot(v1))
    };

    Ok(IntegrationResult {
        states,
        deflection_angle,
        energy_drift,
        momentum_drift,
    })
}

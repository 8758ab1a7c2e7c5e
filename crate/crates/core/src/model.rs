//! Core domain types, unit conventions and trajectory geometry.
//!
//! # Units
//!
//! Everything is dimensionless with ħ = c = 1. Charge is measured in units
//! of the elementary charge e, magnetic flux in units of hc/e, so one CCW
//! loop of a charge q̃ around a fluxon Φ̃ accumulates the phase 2π·q̃·Φ̃.
//! The superconducting flux quantum hc/2e is 1/2 in these units.
//!
//! # Orientation
//!
//! CCW is positive, ẑ points out of the plane. The overall sign of the
//! field momentum is pinned by the regression test "CCW winding of a
//! positive charge around a positive fluxon gives +2π·q̃·Φ̃"; this is a
//! convention choice, not a derived fact.

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Hard cap on |v|/c: all dynamics are first order in v/c.
pub const VELOCITY_CAP: f64 = 0.1;

/// Superconducting flux quantum hc/2e in units of hc/e.
pub const SC_FLUX_QUANTUM: f64 = 0.5;

/// Phase accumulated by `winding` CCW loops of charge `q` around flux `flux`:
/// 2π·winding·q̃·Φ̃.
#[inline]
pub fn loop_phase(charge: f64, flux: f64, winding: i32) -> f64 {
    std::f64::consts::TAU * f64::from(winding) * charge * flux
}

/// A point charge: position, velocity (units of c) and charge (units of e).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeState {
    pub position: Vec2,
    pub velocity: Vec2,
    /// Charge q̃ in units of e.
    pub charge: f64,
    pub mass: f64,
}

impl ChargeState {
    pub fn new(position: Vec2, velocity: Vec2, charge: f64, mass: f64) -> Result<Self> {
        check_velocity(velocity)?;
        if !charge.is_finite() {
            return Err(Error::NonFinite {
                name: "charge",
                value: charge,
            });
        }
        check_positive("mass", mass)?;
        Ok(Self {
            position,
            velocity,
            charge,
            mass,
        })
    }

    /// Stationary charge with unit mass.
    pub fn at_rest(position: Vec2, charge: f64) -> Self {
        Self::new(position, Vec2::ZERO, charge, 1.0).expect("rest state is always valid")
    }
}

/// A regularized fluxon: localized flux Φ̃ (units of hc/e) spread uniformly
/// over a disk of radius `core_radius`. Analytic field formulas apply
/// outside the core.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxonState {
    pub position: Vec2,
    pub velocity: Vec2,
    /// Flux Φ̃ in units of hc/e.
    pub flux: f64,
    /// Core regularization radius a > 0.
    pub core_radius: f64,
    pub mass: f64,
}

impl FluxonState {
    pub fn new(
        position: Vec2,
        velocity: Vec2,
        flux: f64,
        core_radius: f64,
        mass: f64,
    ) -> Result<Self> {
        check_velocity(velocity)?;
        if !flux.is_finite() {
            return Err(Error::NonFinite {
                name: "flux",
                value: flux,
            });
        }
        check_positive("core_radius", core_radius)?;
        check_positive("mass", mass)?;
        Ok(Self {
            position,
            velocity,
            flux,
            core_radius,
            mass,
        })
    }

    /// Stationary fluxon with unit mass.
    pub fn at_rest(position: Vec2, flux: f64, core_radius: f64) -> Self {
        Self::new(position, Vec2::ZERO, flux, core_radius, 1.0)
            .expect("rest state is always valid")
    }
}

fn check_velocity(v: Vec2) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite {
            name: "velocity",
            value: v.norm(),
        });
    }
    let speed = v.norm();
    if speed >= VELOCITY_CAP {
        return Err(Error::VelocityExceedsCap {
            speed,
            cap: VELOCITY_CAP,
        });
    }
    Ok(())
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::NonPositive { name, value });
    }
    Ok(())
}

/// Closure tolerance for trajectories marked `closed`.
pub const CLOSURE_TOL: f64 = 1e-12;

/// A time-stamped polyline path. All line integrals over trajectories use
/// midpoint-rule segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: Vec<(f64, Vec2)>,
    closed: bool,
}

impl Trajectory {
    /// Validates: at least 3 samples, strictly increasing times, and (when
    /// `closed`) first/last positions coincide to within `CLOSURE_TOL`.
    pub fn new(samples: Vec<(f64, Vec2)>, closed: bool) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::TooFewSamples {
                got: samples.len(),
                need: 3,
            });
        }
        for i in 1..samples.len() {
            if samples[i].0 <= samples[i - 1].0 {
                return Err(Error::NonMonotonicTimes { index: i });
            }
        }
        if closed {
            let gap = samples[0].1.distance(samples[samples.len() - 1].1);
            if gap > CLOSURE_TOL {
                return Err(Error::NonClosedTrajectory { gap });
            }
        }
        Ok(Self { samples, closed })
    }

    pub fn samples(&self) -> &[(f64, Vec2)] {
        &self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first_position(&self) -> Vec2 {
        self.samples[0].1
    }

    pub fn last_position(&self) -> Vec2 {
        self.samples[self.samples.len() - 1].1
    }

    /// Iterator over polyline segments as (start, end) position pairs.
    pub fn segments(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        self.samples.windows(2).map(|w| (w[0].1, w[1].1))
    }

    /// Minimum distance from `point` to any segment of the polyline.
    pub fn min_distance_to(&self, point: Vec2) -> f64 {
        self.segments()
            .map(|(a, b)| segment_distance(a, b, point))
            .fold(f64::INFINITY, f64::min)
    }
}

fn segment_distance(a: Vec2, b: Vec2, p: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Minimum distance from `center` below which winding is ill-defined.
pub const WINDING_MIN_DISTANCE: f64 = 1e-9;

/// Signed number of CCW revolutions of a closed polyline around `center`.
///
/// Computed as the sum of signed turning angles subtended by the segments,
/// divided by 2π and rounded; exact for polylines whose segments stay away
/// from the center.
pub fn winding_number(traj: &Trajectory, center: Vec2) -> Result<i32> {
    if !traj.is_closed() {
        let gap = traj.first_position().distance(traj.last_position());
        return Err(Error::NonClosedTrajectory { gap });
    }
    let dist = traj.min_distance_to(center);
    if dist < WINDING_MIN_DISTANCE {
        return Err(Error::CenterOnPath { dist });
    }
    let mut total = 0.0;
    for (a, b) in traj.segments() {
        let u = a - center;
        let v = b - center;
        total += u.cross(v).atan2(u.dot(v));
    }
    Ok((total / std::f64::consts::TAU).round() as i32)
}

/// Uniformly sampled circular path of `turns` revolutions.
///
/// `n_samples` is the total segment count; the path holds `n_samples + 1`
/// samples and is marked closed when `turns` is an integer (the final
/// sample is then snapped onto the first). Negative `angular_velocity`
/// traverses the circle clockwise.
pub fn make_circular_trajectory(
    center: Vec2,
    radius: f64,
    angular_velocity: f64,
    n_samples: usize,
    turns: f64,
) -> Result<Trajectory> {
    if radius <= 0.0 || !radius.is_finite() {
        return Err(Error::NonPositive {
            name: "radius",
            value: radius,
        });
    }
    if angular_velocity == 0.0 || !angular_velocity.is_finite() {
        return Err(Error::NonPositive {
            name: "angular_velocity.abs",
            value: angular_velocity.abs(),
        });
    }
    if turns <= 0.0 || !turns.is_finite() {
        return Err(Error::NonPositive {
            name: "turns",
            value: turns,
        });
    }
    if n_samples < 16 {
        return Err(Error::BadDiscretization {
            got: n_samples,
            need: 16,
        });
    }

    let total_time = turns * std::f64::consts::TAU / angular_velocity.abs();
    let closed = (turns - turns.round()).abs() < CLOSURE_TOL;
    let mut samples = Vec::with_capacity(n_samples + 1);
    for k in 0..=n_samples {
        let t = total_time * k as f64 / n_samples as f64;
        let theta = angular_velocity * t;
        samples.push((t, center + radius * Vec2::from_angle(theta)));
    }
    if closed {
        let first = samples[0].1;
        samples.last_mut().expect("nonempty").1 = first;
    }
    Trajectory::new(samples, closed)
}

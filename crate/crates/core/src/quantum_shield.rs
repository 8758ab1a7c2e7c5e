//! Superconducting shield with quantized induced charge: number-state
//! superpositions, per-state field momenta and phase factors, and the
//! shielded-configuration outcomes.
//!
//! The shield state |η⟩ = Σ b_m|ψ_m⟩ superposes substates with m excess
//! Cooper pairs (charge 2m in units of e; m may be negative). Ideal
//! shielding of the expectation value of the field requires
//! Σ m|b_m|² = −q̃/2, which no single number state satisfies unless q̃ is
//! an even integer. The one-loop phase factor u1 = Σ|b_m|²e^{iφ_m} is a
//! diagonal sum — no m→l transitions — so visibilities are exact sums,
//! not density-matrix evolutions.

use crate::classical_shield::{config1_lagrangian_terms, CircularShield};
use crate::error::{Error, Result};
use crate::model::{ChargeState, FluxonState};
use crate::vec2::Vec2;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// Normalization tolerance for Σ|b_m|².
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance on the mean excess charge for the ideal-shielding label.
pub const SHIELDING_TOL: f64 = 1e-9;

/// Complex amplitudes over excess-Cooper-pair number states.
#[derive(Debug, Clone, PartialEq)]
pub struct ShieldState {
    amplitudes: BTreeMap<i64, Complex64>,
}

impl ShieldState {
    /// Validates normalization (Σ|b_m|² = 1 to `NORM_TOL`) and nonempty
    /// finite support.
    pub fn new(amplitudes: BTreeMap<i64, Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.values().map(|b| b.norm_sqr()).sum();
        if amplitudes.is_empty() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(amplitudes: BTreeMap<i64, Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.values().map(|b| b.norm_sqr()).sum();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm });
        }
        let scale = norm.sqrt().recip();
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|(m, b)| (m, b * scale)).collect(),
        })
    }

    /// A single number state |ψ_m⟩.
    pub fn number_state(m: i64) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(m, Complex64::new(1.0, 0.0));
        Self { amplitudes }
    }

    /// Equal-weight superposition of |ψ_0⟩ and |ψ_1⟩ — the minimal state
    /// that ideally shields a charge q̃ = −1.
    pub fn two_state_half_half() -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(0, Complex64::new(w, 0.0));
        amplitudes.insert(1, Complex64::new(w, 0.0));
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &BTreeMap<i64, Complex64> {
        &self.amplitudes
    }

    /// Occupation weights (m, |b_m|²) in increasing m.
    pub fn weights(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.amplitudes.iter().map(|(&m, b)| (m, b.norm_sqr()))
    }

    /// Σ m|b_m|², the mean number of excess Cooper pairs.
    pub fn mean_pairs(&self) -> f64 {
        self.weights().map(|(m, w)| m as f64 * w).sum()
    }
}

/// Whether a state ideally shields the given charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShieldingReport {
    /// 2·Σ m|b_m|², in units of e.
    pub mean_excess_charge: f64,
    /// True iff |mean_excess_charge + q̃| < `SHIELDING_TOL`.
    pub satisfies_ideal_shielding: bool,
}

/// Check the complete-shielding condition Σ m|b_m|² = −q̃/2.
pub fn check_shielding(state: &ShieldState, charge_q: f64) -> Result<ShieldingReport> {
    let norm: f64 = state.weights().map(|(_, w)| w).sum();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let mean_excess_charge = 2.0 * state.mean_pairs();
    Ok(ShieldingReport {
        mean_excess_charge,
        satisfies_ideal_shielding: (mean_excess_charge + charge_q).abs() < SHIELDING_TOL,
    })
}

/// Field momentum seen by substate |ψ_m⟩ for a fluxon at distance `radius`
/// from the caged charge, expressed in the frame where the fluxon sits on
/// the +x axis: magnitude (q̃+2m)Φ̃/R along −φ̂.
pub fn pi_m(charge_q: f64, m: i64, radius: f64, flux: f64) -> Vec2 {
    let magnitude = (charge_q + 2.0 * m as f64) * flux / radius;
    // −φ̂ at azimuth 0 is (0, −1).
    Vec2::new(0.0, -magnitude)
}

/// One-loop phase for substate |ψ_m⟩: φ_m = 2π(q̃+2m)Φ̃.
pub fn phase_m(charge_q: f64, m: i64, flux: f64) -> f64 {
    TAU * (charge_q + 2.0 * m as f64) * flux
}

/// One-loop phase factor u1 = Σ|b_m|²·e^{iφ_m}. |u1| is the fringe
/// visibility. Computed whether or not the state satisfies the shielding
/// constraint; use `check_shielding` for the ideal-shielding label.
pub fn phase_factor_u1(state: &ShieldState, charge_q: f64, flux: f64) -> Result<Complex64> {
    let norm: f64 = state.weights().map(|(_, w)| w).sum();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(state
        .weights()
        .map(|(m, w)| Complex64::from_polar(w, phase_m(charge_q, m, flux)))
        .sum())
}

/// u1 at flux quantized in superconducting flux quanta, Φ̃ = n/2. Equals
/// e^{iπ·q̃·n} for every normalized state: the Cooper-pair contribution
/// e^{i2π·2m·(n/2)} is unity.
pub fn config3_phase_factor(state: &ShieldState, charge_q: f64, n: i64) -> Result<Complex64> {
    phase_factor_u1(state, charge_q, 0.5 * n as f64)
}

/// The loop phase with the fluxon caged (fluxon inside, charge orbiting
/// outside): zero for every number of excess Cooper pairs m.
///
/// The induced density for |ψ_m⟩ splits into the m-dependent uniform
/// background (2m+q̃)/(2πR) plus the charge-tracking inhomogeneous part.
/// The background is static, carries no current and couples to nothing;
/// the inhomogeneous part reproduces the classical term cancellation. The
/// two orbit terms are evaluated on a canonical geometry (the cancellation
/// is radius-independent) and their sum is converted to a per-loop phase.
pub fn config1_phase(charge_q: f64, flux: f64, m: i64) -> f64 {
    let _ = m; // the uniform background's current vanishes for every m
    let shield = CircularShield::new(Vec2::ZERO, 1.0).expect("unit shield");
    let fluxon = FluxonState::at_rest(Vec2::ZERO, flux, 0.01);
    let phi_dot = 0.04;
    let orbit_radius = 2.0;
    let charge = ChargeState::new(
        Vec2::new(orbit_radius, 0.0),
        Vec2::new(0.0, orbit_radius * phi_dot),
        charge_q,
        1.0,
    )
    .expect("orbit speed is under the velocity cap");
    let (t1, t2) =
        config1_lagrangian_terms(&charge, &fluxon, &shield, 256).expect("canonical geometry");
    // L_int is constant on the orbit; one loop takes 2π/φ̇.
    (t1 + t2) * TAU / phi_dot
}

/// One row of a flux scan: u1 and the fringe visibility |u1|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityRow {
    pub flux: f64,
    pub u1: Complex64,
    pub visibility: f64,
}

/// Evaluate u1 over a flux grid.
pub fn visibility_scan(
    state: &ShieldState,
    charge_q: f64,
    flux_grid: &[f64],
) -> Result<Vec<VisibilityRow>> {
    if flux_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    flux_grid
        .iter()
        .map(|&flux| {
            let u1 = phase_factor_u1(state, charge_q, flux)?;
            Ok(VisibilityRow {
                flux,
                u1,
                visibility: u1.norm(),
            })
        })
        .collect()
}

//! Electromagnetic fields and potentials of the charge and the fluxon in
//! two spatial dimensions.
//!
//! The charge carries the 2D ("line-charge") Coulomb field with 1/ρ decay,
//! E_q(x) = 2q̃(x−r)/|x−r|²; the normalization is fixed so the closed-form
//! field momentum q̃Φ̃/d and the phase convention 2π·q̃·Φ̃ hold together.
//! Moving-source fields use the first-order cross-product forms
//! B = v × E and E = −V × B. The `*_uniform_motion` variants evaluate the
//! exact fields of uniformly moving sources; they agree with the
//! first-order forms to O((v/c)²).

use crate::error::{Error, Result};
use crate::model::{ChargeState, FluxonState};
use crate::vec2::Vec2;

/// Distance below which a field evaluation counts as "at the source".
pub const SOURCE_EPS: f64 = 1e-12;

/// Electric and out-of-plane magnetic field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldSample {
    pub e: Vec2,
    pub bz: f64,
}

/// 2D Coulomb field of the charge: E_q(x) = 2q̃(x−r)/|x−r|².
pub fn e_field_charge(src: &ChargeState, x: Vec2) -> Result<Vec2> {
    let delta = x - src.position;
    let rho_sq = delta.norm_sq();
    if rho_sq <= SOURCE_EPS * SOURCE_EPS {
        return Err(Error::EvaluationAtSource);
    }
    Ok(delta * (2.0 * src.charge / rho_sq))
}

/// First-order magnetic field of the moving charge: Bz = (v × E_q)_z.
pub fn b_field_charge(src: &ChargeState, x: Vec2) -> Result<f64> {
    Ok(src.velocity.cross(e_field_charge(src, x)?))
}

/// Exact electric field of a uniformly moving 2D charge.
///
/// With γ = 1/√(1−v²) and Δ split along/across the velocity,
/// E = 2q̃·γ·Δ / (γ²Δ∥² + Δ⊥²). Reduces to `e_field_charge` at O(v/c).
pub fn e_field_charge_uniform_motion(src: &ChargeState, x: Vec2) -> Result<Vec2> {
    let delta = x - src.position;
    let rho_sq = delta.norm_sq();
    if rho_sq <= SOURCE_EPS * SOURCE_EPS {
        return Err(Error::EvaluationAtSource);
    }
    let v_sq = src.velocity.norm_sq();
    if v_sq == 0.0 {
        return Ok(delta * (2.0 * src.charge / rho_sq));
    }
    let gamma_sq = 1.0 / (1.0 - v_sq);
    let par = delta.dot(src.velocity).powi(2) / v_sq;
    let denom = gamma_sq * par + (rho_sq - par);
    Ok(delta * (2.0 * src.charge * gamma_sq.sqrt() / denom))
}

/// Magnetic field of a uniformly moving charge, Bz = (v × E)_z with the
/// exact E (the cross-product relation is exact for uniform motion).
pub fn b_field_charge_uniform_motion(src: &ChargeState, x: Vec2) -> Result<f64> {
    Ok(src.velocity.cross(e_field_charge_uniform_motion(src, x)?))
}

/// Bz of the regularized fluxon: uniform disk profile 2Φ̃/a² inside the
/// core, zero outside. The total flux is 2πΦ̃ for every core radius.
pub fn b_field_fluxon(src: &FluxonState, x: Vec2) -> f64 {
    let rho_sq = (x - src.position).norm_sq();
    if rho_sq < src.core_radius * src.core_radius {
        2.0 * src.flux / (src.core_radius * src.core_radius)
    } else {
        0.0
    }
}

/// First-order electric field of the moving fluxon: E_Φ = −V × (Bz ẑ),
/// i.e. Bz·(−V_y, V_x). Zero outside the core and for a stationary fluxon.
pub fn e_field_fluxon(src: &FluxonState, x: Vec2) -> Vec2 {
    let bz = b_field_fluxon(src, x);
    if bz == 0.0 {
        return Vec2::ZERO;
    }
    Vec2::new(-src.velocity.y, src.velocity.x) * bz
}

/// Vector potential of the fluxon outside its core:
/// A(x) = (Φ̃/ρ) φ̂, so the circulation around the core is 2πΦ̃.
pub fn vector_potential_fluxon(src: &FluxonState, x: Vec2) -> Result<Vec2> {
    let delta = x - src.position;
    let rho_sq = delta.norm_sq();
    if rho_sq <= src.core_radius * src.core_radius {
        return Err(Error::InsideCore {
            rho: rho_sq.sqrt(),
            core_radius: src.core_radius,
        });
    }
    Ok(delta.perp_ccw() * (src.flux / rho_sq))
}

/// Superposed first-order fields of a charge and a fluxon at `x`.
pub fn sample_fields(charge: &ChargeState, fluxon: &FluxonState, x: Vec2) -> Result<FieldSample> {
    let e_q = e_field_charge(charge, x)?;
    Ok(FieldSample {
        e: e_q + e_field_fluxon(fluxon, x),
        bz: charge.velocity.cross(e_q) + b_field_fluxon(fluxon, x),
    })
}

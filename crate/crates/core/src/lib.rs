//! Numerical laboratory for charge-fluxon interference in two dimensions.
//!
//! A point charge and a regularized fluxon interact through the overlap of
//! their electromagnetic fields. The crate evaluates that overlap three
//! ways — vector potential, dual electric form, and the locally
//! accumulated field momentum — integrates the force-free two-body
//! dynamics, and models electromagnetic shielding of the overlap both
//! classically (grounded conductor) and with Cooper-pair-quantized induced
//! charge, where the interference visibility becomes the modulus of the
//! phase factor u1 = Σ|b_m|²e^{iφ_m}.
//!
//! Everything is dimensionless with ħ = c = 1 (see [`model`]); all types
//! are immutable values and every operation is a pure function.

pub mod classical_shield;
pub mod dynamics;
pub mod error;
pub mod fields2d;
pub mod interaction;
pub mod model;
pub mod phases;
pub mod quad;
pub mod quantum_shield;
pub mod vec2;

pub use classical_shield::{CircularShield, SurfaceDensity};
pub use dynamics::{IntegrationResult, SystemState};
pub use error::{Error, Result};
pub use fields2d::FieldSample;
pub use model::{ChargeState, FluxonState, Trajectory};
pub use phases::{PhaseMethod, PhaseResult, TwoPathFringe};
pub use quad::QuadratureSpec;
pub use quantum_shield::{ShieldState, ShieldingReport, VisibilityRow};
pub use vec2::Vec2;

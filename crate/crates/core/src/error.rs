//! Error type shared by all modules.

/// Errors raised by geometry validation, field evaluation and the solvers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("trajectory is not closed (endpoint gap {gap:.3e})")]
    NonClosedTrajectory { gap: f64 },

    #[error("trajectory has {got} samples, need at least {need}")]
    TooFewSamples { got: usize, need: usize },

    #[error("sample times are not strictly increasing at index {index}")]
    NonMonotonicTimes { index: usize },

    #[error("winding center lies on the path (min distance {dist:.3e})")]
    CenterOnPath { dist: f64 },

    #[error("discretization too coarse: {got} samples, need at least {need}")]
    BadDiscretization { got: usize, need: usize },

    #[error("field evaluated at the source location")]
    EvaluationAtSource,

    #[error("point inside the fluxon core (rho {rho:.3e} <= core radius {core_radius:.3e})")]
    InsideCore { rho: f64, core_radius: f64 },

    #[error("charge-fluxon separation {separation:.3e} too close to core radius {core_radius:.3e}")]
    CoreOverlap { separation: f64, core_radius: f64 },

    #[error("quadrature did not converge: error estimate {estimate:.3e} > tolerance {tolerance:.3e}")]
    QuadratureNotConverged { estimate: f64, tolerance: f64 },

    #[error("trajectory entered the fluxon core at t = {time}")]
    CoreEntry { time: f64 },

    #[error("trajectory approaches the fluxon core (min distance {dist:.3e}, required {required:.3e})")]
    CoreApproach { dist: f64, required: f64 },

    #[error("charge lies inside or on the shield (distance {dist:.3e}, shield radius {radius:.3e})")]
    SourceInsideShield { dist: f64, radius: f64 },

    #[error("evaluation point lies on or outside the shield surface")]
    EvaluationOnSurface,

    #[error("geometry violates the configuration: {0}")]
    GeometryViolation(&'static str),

    #[error("induced charge not conserved across snapshots (max drift {drift:.3e})")]
    ChargeNotConserved { drift: f64 },

    #[error("shield state not normalized (sum |b_m|^2 = {norm})")]
    NotNormalized { norm: f64 },

    #[error("flux grid is empty")]
    EmptyGrid,

    #[error("trajectories desynchronized: {0}")]
    DesynchronizedTrajectories(&'static str),

    #[error("paths do not share endpoints (start gap {start_gap:.3e}, end gap {end_gap:.3e})")]
    EndpointMismatch { start_gap: f64, end_gap: f64 },

    #[error("speed {speed:.3e} exceeds the v/c cap {cap}")]
    VelocityExceedsCap { speed: f64, cap: f64 },

    #[error("parameter {name} must be positive and finite (got {value})")]
    NonPositive { name: &'static str, value: f64 },

    #[error("parameter {name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

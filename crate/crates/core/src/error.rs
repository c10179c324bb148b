//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// A velocity argument failed the unit-norm or future-pointing check.
    #[error("velocity is not unit future-pointing timelike: g(V,V) = {norm_sq}, V^0 = {time_component}")]
    NonUnitVelocity { norm_sq: f64, time_component: f64 },

    /// A field decomposition or spatial map is not orthogonal to the velocity.
    #[error("{what} is not spatial with respect to the velocity (violation {violation:e})")]
    NonSpatial { what: &'static str, violation: f64 },

    /// A map required to be self-adjoint is not.
    #[error("{what} is not self-adjoint (violation {violation:e})")]
    NotSelfAdjoint { what: &'static str, violation: f64 },

    /// The perturbed metric left the Lorentzian cone.
    #[error("perturbed metric is not Lorentzian at t = {t}")]
    DegenerateMetric { t: f64 },

    /// Anything else the caller got wrong.
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

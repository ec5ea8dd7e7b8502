//! Asymptotic objects: limiting cumulant rates, LDP rate functions and the
//! Legendre–Fenchel machinery, mod-Gaussian residuals with their
//! precise-deviation and local-limit consequences, and zone-of-control /
//! Berry–Esseen verification.

pub mod control;
pub mod modgauss;
pub mod profile;
pub mod rate;

pub use control::{berry_esseen_constant, zone_of_control_check, ZoneParams, ZoneReport};
pub use modgauss::{
    local_limit_fit, local_limit_prediction, mod_gaussian_residual,
    mod_gaussian_residual_line_unit, precise_deviation_prediction, LocalLimitFit,
    ModGaussianFrame,
};
pub use profile::{
    circle_limit_profile, line_limit_profile, line_third_cumulant_rate,
    line_third_cumulant_rate_alternate, line_unit_profile, t0, LimitProfile, ModelId,
};
pub use rate::{
    circle_lambda, circle_lambda_prime, circle_rate_boundary, legendre_transform,
    line_rate_scaled, line_rate_unit, CircleRateBoundary, RateFunction, Speed,
};

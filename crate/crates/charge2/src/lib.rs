//! Exact finite-n statistics for the number of unit-charge particles in the
//! solvable two-charge log-gas ensembles on the real line and the unit
//! circle, together with the asymptotic theory those statistics verify:
//! large-deviation rate functions, cumulant limits, mod-Gaussian residuals,
//! precise deviations, Berry–Esseen bounds and local limit theorems.
//!
//! Everything rests on one structural fact: in both ensembles the count of
//! unit-charge particles is distributed as a *doubled Bernoulli sum*
//! `2 Σ_{k=1}^n B(p_k)` with explicit success probabilities — on the line
//! `p_k = X²/(X² + ξ_{k,n})` through the roots `ξ` of a generalized Laguerre
//! polynomial, on the circle `p_k = (2nρ)²/((2nρ)² + (2k-1)²)` in closed
//! form. The exact engine ([`exact`]) computes PMFs, cumulants, tails and
//! distances from that representation; the limit layer ([`limits`]) carries
//! the asymptotic predictions; and the verification layer ([`verify`])
//! compares the two at desk scale.

// Input guards use `!(x > 0.0)` so NaN fails in one comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circle;
pub mod error;
pub mod exact;
pub mod limits;
pub mod line;
pub mod model;
pub mod orthopoly;
pub mod output;
pub mod quad;
pub mod verify;

pub use circle::{circle_mgf, circle_model, CircleEnsemble};
pub use error::{Error, Result};
pub use exact::{
    exact_cumulants, exact_pmf, kolmogorov_distance_to_normal, mgf_numeric_cumulants, sample,
    tail_probability, CumulantTriple, ExactPmf, TailSide,
};
pub use limits::{
    berry_esseen_constant, circle_limit_profile, line_limit_profile, line_unit_profile,
    zone_of_control_check, LimitProfile, ModGaussianFrame, ModelId, RateFunction, ZoneParams,
};
pub use line::{
    line_mgf_integral, line_mgf_laguerre, line_mgf_product, line_model, LineEnsemble, Regime,
};
pub use model::DoubledBernoulliModel;
pub use orthopoly::{laguerre_log_at_negative, laguerre_roots, LaguerreBasis, RootSet};
pub use verify::{run_verification, CheckRecord, VerificationReport, VerifyConfig};

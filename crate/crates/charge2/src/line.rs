//! The two-charge ensemble on the real line. `U_n` is the number of
//! unit-charge particles when the total charge is `N = 2n`; its probability
//! generating function factorizes over the roots `ξ_{k,n}` of `L_n^{-1/2}` as
//! `Π (X²t² + ξ_k)/(X² + ξ_k)`, which is a doubled Bernoulli sum with
//! `p_k = X²/(X² + ξ_k)`.
//!
//! The log-MGF is exposed through three independent computations that must
//! agree: the Laguerre ratio `L_n(-X²e^{2z})/L_n(-X²)`, the Bernoulli product,
//! and a Laplace-type integral representation (test tier, capped degree).

use crate::error::{Error, Result};
use crate::model::DoubledBernoulliModel;
use crate::orthopoly::{laguerre_log_at_negative_ln, laguerre_roots_cached};
use crate::quad::{log_add_exp, log_laplace_integral};

/// Fugacity scaling regime. The regime is explicit in the type so limit
/// predictions (which differ by regime) cannot be applied to the wrong model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `X = √(2nγ)` for a fixed rate `γ > 0`.
    ScaledFugacity { gamma: f64 },
    /// `X = 1`.
    UnitFugacity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineEnsemble {
    n: u32,
    regime: Regime,
}

impl LineEnsemble {
    pub fn scaled(n: u32, gamma: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("n must be ≥ 1, got {n}")));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        Ok(Self {
            n,
            regime: Regime::ScaledFugacity { gamma },
        })
    }

    pub fn unit(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("n must be ≥ 1, got {n}")));
        }
        Ok(Self {
            n,
            regime: Regime::UnitFugacity,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `X² = 2nγ` in the scaled regime, `1` in the unit regime.
    pub fn fugacity_squared(&self) -> f64 {
        match self.regime {
            Regime::ScaledFugacity { gamma } => 2.0 * f64::from(self.n) * gamma,
            Regime::UnitFugacity => 1.0,
        }
    }
}

/// Build the doubled-Bernoulli model `p_k = X²/(X² + ξ_{k,n})`.
pub fn line_model(ens: &LineEnsemble) -> Result<DoubledBernoulliModel> {
    let x2 = ens.fugacity_squared();
    let roots = laguerre_roots_cached(ens.n)?;
    let probs: Vec<f64> = roots.roots().iter().map(|&xi| x2 / (x2 + xi)).collect();
    let label = match ens.regime {
        Regime::ScaledFugacity { gamma } => format!("line-scaled(n={}, gamma={})", ens.n, gamma),
        Regime::UnitFugacity => format!("line-unit(n={})", ens.n),
    };
    DoubledBernoulliModel::new(probs, label)
}

/// `log E[e^{zU_n}] = log L_n(-X²e^{2z}) - log L_n(-X²)`.
///
/// The argument is carried as `log X² + 2z`, so any real `z` is admissible.
pub fn line_mgf_laguerre(ens: &LineEnsemble, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::InvalidInput(format!("z must be finite, got {z}")));
    }
    let ln_x2 = ens.fugacity_squared().ln();
    Ok(laguerre_log_at_negative_ln(ens.n, ln_x2 + 2.0 * z)
        - laguerre_log_at_negative_ln(ens.n, ln_x2))
}

/// `log E[e^{z·count}]` from the factorized model; exact for all `z`.
pub fn line_mgf_product(model: &DoubledBernoulliModel, z: f64) -> f64 {
    model.log_mgf(z)
}

/// Degree cap for the integral cross-check (quadrature cost).
pub const INTEGRAL_N_CAP: u32 = 200;

/// Laplace-integral route:
/// `E[e^{zU_n}] = e^{(N+1)z} e^{-Nγ(e^{2z}-1)} I_N(γe^{2z}) / I_N(γ)` with
/// `I_N(c) = ∫_{-∞}^{∞} s^N e^{-Nc(2s + s²)} ds` and `N = 2n`.
///
/// The integral is split at 0 into two convex Laplace problems
/// `g_±(c, s) = -log s ± 2cs + cs²` on `(0, ∞)` and each is integrated in
/// renormalized log space around its minimizer
/// `t_∓ = ½(∓1 + √(1 + 2/c))`.
///
/// This is a validation route: it exists to check the other two, and is
/// capped at degree [`INTEGRAL_N_CAP`].
pub fn line_mgf_integral(n: u32, gamma: f64, z: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("n must be ≥ 1, got {n}")));
    }
    if n > INTEGRAL_N_CAP {
        return Err(Error::CapExceeded {
            what: "MGF integral cross-check",
            n,
            cap: INTEGRAL_N_CAP,
        });
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidInput(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let c1 = gamma * (2.0 * z).exp();
    if !c1.is_finite() || c1 <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "γe^{{2z}} not representable for z = {z}"
        )));
    }
    let big_n = 2.0 * f64::from(n);
    let log_ratio = log_integral(big_n, c1)? - log_integral(big_n, gamma)?;
    Ok((big_n + 1.0) * z - big_n * gamma * (2.0 * z).exp_m1() + log_ratio)
}

/// `log I_N(c)`; the two half-line pieces are combined with a log-add.
fn log_integral(big_n: f64, c: f64) -> Result<f64> {
    let root = (1.0 + 2.0 / c).sqrt();
    let t_minus = 0.5 * (1.0 + root);
    let t_plus = 0.5 * (-1.0 + root);
    let g_minus = move |s: f64| -s.ln() - 2.0 * c * s + c * s * s;
    let g_plus = move |s: f64| -s.ln() + 2.0 * c * s + c * s * s;
    let lo_minus = log_laplace_integral(&g_minus, big_n, t_minus)?;
    let lo_plus = log_laplace_integral(&g_plus, big_n, t_plus)?;
    Ok(log_add_exp(lo_minus, lo_plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_degree_one() {
        // Root 1/2, X² = 1 → p = 2/3, in both regime spellings.
        let unit = line_model(&LineEnsemble::unit(1).unwrap()).unwrap();
        assert!((unit.probs()[0] - 2.0 / 3.0).abs() < 1e-14);

        let scaled = line_model(&LineEnsemble::scaled(1, 0.5).unwrap()).unwrap();
        assert!((scaled.probs()[0] - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn model_degree_two_explicit_roots() {
        let m = line_model(&LineEnsemble::unit(2).unwrap()).unwrap();
        let lo = (3.0 - 6.0f64.sqrt()) / 2.0;
        let hi = (3.0 + 6.0f64.sqrt()) / 2.0;
        // Roots ascend, so probabilities descend.
        assert!((m.probs()[0] - 1.0 / (1.0 + lo)).abs() < 1e-13);
        assert!((m.probs()[1] - 1.0 / (1.0 + hi)).abs() < 1e-13);
    }

    #[test]
    fn laguerre_mgf_degree_one_closed_form() {
        let ens = LineEnsemble::unit(1).unwrap();
        assert_eq!(line_mgf_laguerre(&ens, 0.0).unwrap(), 0.0);
        // L_1(-y) = 1/2 + y: at z = log 2 the ratio is (1/2+4)/(3/2) = 3.
        let got = line_mgf_laguerre(&ens, 2.0f64.ln()).unwrap();
        assert!((got - 3.0f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn laguerre_and_product_agree() {
        let ens = LineEnsemble::scaled(50, 1.0).unwrap();
        let model = line_model(&ens).unwrap();
        for i in 0..=20 {
            let z = -1.0 + 0.1 * f64::from(i);
            let a = line_mgf_laguerre(&ens, z).unwrap();
            let b = line_mgf_product(&model, z);
            assert!((a - b).abs() < 1e-10, "z={z}: {a} vs {b}");
        }
    }

    #[test]
    fn laguerre_mgf_huge_z_is_finite() {
        let ens = LineEnsemble::scaled(10, 1.0).unwrap();
        let v = line_mgf_laguerre(&ens, 400.0).unwrap();
        assert!(v.is_finite());
        // For z → ∞ the MGF behaves like e^{2nz}·Πξ terms; slope check.
        let v2 = line_mgf_laguerre(&ens, 401.0).unwrap();
        assert!((v2 - v - 20.0).abs() < 1e-6);
    }

    #[test]
    fn integral_route_degree_one_closed_form() {
        // n = 1, γ = 1/2: MGF = 1/3 + (2/3)e^{2z}.
        for z in [-1.0, -0.3, 0.0, 0.5, 1.0] {
            let got = line_mgf_integral(1, 0.5, z).unwrap();
            let expect = (1.0 / 3.0 + 2.0 / 3.0 * (2.0 * z).exp()).ln();
            assert!((got - expect).abs() < 1e-9, "z={z}: {got} vs {expect}");
        }
    }

    #[test]
    fn integral_route_matches_laguerre() {
        let ens = LineEnsemble::scaled(5, 1.0).unwrap();
        let a = line_mgf_integral(5, 1.0, 0.2).unwrap();
        let b = line_mgf_laguerre(&ens, 0.2).unwrap();
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        assert_eq!(line_mgf_integral(5, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn integral_route_cap() {
        assert!(matches!(
            line_mgf_integral(201, 1.0, 0.1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn probabilities_increase_with_fugacity() {
        let small = line_model(&LineEnsemble::scaled(20, 0.5).unwrap()).unwrap();
        let large = line_model(&LineEnsemble::scaled(20, 0.8).unwrap()).unwrap();
        for (a, b) in small.probs().iter().zip(large.probs()) {
            assert!(b > a);
        }
    }
}

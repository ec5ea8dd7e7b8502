//! The two-charge ensemble on the unit circle. `V_n` is the number of
//! unit-charge particles when `X = nρ`; its generating function is the
//! explicit factor product `Π ((2nρt)² + (2k-1)²) / ((2nρ)² + (2k-1)²)`,
//! i.e. a doubled Bernoulli sum with `p_k = (2nρ)²/((2nρ)² + (2k-1)²)`.

use crate::error::{Error, Result};
use crate::model::DoubledBernoulliModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleEnsemble {
    n: u32,
    rho: f64,
}

impl CircleEnsemble {
    pub fn new(n: u32, rho: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("n must be ≥ 1, got {n}")));
        }
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rho must be positive, got {rho}"
            )));
        }
        Ok(Self { n, rho })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// `p_k = (2nρ)² / ((2nρ)² + (2k-1)²)`, k = 1..n.
///
/// Computed through the ratio `(2k-1)/(2nρ)` so nothing is squared out of
/// f64 range no matter how large `nρ` gets; probabilities that round to 0 or
/// 1 anyway (fugacity extremes) are rejected by the model invariant.
pub fn circle_model(ens: &CircleEnsemble) -> Result<DoubledBernoulliModel> {
    let u = 2.0 * f64::from(ens.n) * ens.rho;
    let probs: Vec<f64> = (1..=ens.n)
        .map(|k| {
            let r = f64::from(2 * k - 1) / u;
            1.0 / (1.0 + r * r)
        })
        .collect();
    DoubledBernoulliModel::new(probs, format!("circle(n={}, rho={})", ens.n, ens.rho))
}

/// `log E[e^{zV_n}] = Σ log((2nρe^z)² + (2k-1)²) - log((2nρ)² + (2k-1)²)`,
/// evaluated as `2(log hypot(ue^z, m) - log hypot(u, m))` per factor.
///
/// This is the factor-product identity route; it must agree exactly with the
/// doubled-Bernoulli [`DoubledBernoulliModel::log_mgf`].
pub fn circle_mgf(ens: &CircleEnsemble, z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() > 700.0 {
        return Err(Error::InvalidInput(format!(
            "z out of evaluable range, got {z}"
        )));
    }
    let u = 2.0 * f64::from(ens.n) * ens.rho;
    let uez = u * z.exp();
    Ok((1..=ens.n)
        .map(|k| {
            let m = f64::from(2 * k - 1);
            2.0 * (uez.hypot(m).ln() - u.hypot(m).ln())
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_small_cases() {
        // n = 1, ρ = 1/2: (2nρ)² = 1 → p = 1/2.
        let m = circle_model(&CircleEnsemble::new(1, 0.5).unwrap()).unwrap();
        assert!((m.probs()[0] - 0.5).abs() < 1e-15);

        // n = 2, ρ = 1/2: (2nρ)² = 4 → {4/5, 4/13}.
        let m = circle_model(&CircleEnsemble::new(2, 0.5).unwrap()).unwrap();
        assert!((m.probs()[0] - 0.8).abs() < 1e-15);
        assert!((m.probs()[1] - 4.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn huge_fugacity_degenerates_towards_full_count() {
        let m = circle_model(&CircleEnsemble::new(50, 1e4).unwrap()).unwrap();
        for &p in m.probs() {
            assert!(p > 1.0 - 1e-7 && p < 1.0);
        }
        // Past the representable regime the degenerate factors are rejected
        // instead of silently rounding to 1.
        assert!(circle_model(&CircleEnsemble::new(50, 1e12).unwrap()).is_err());
    }

    #[test]
    fn probabilities_decrease_in_k() {
        let m = circle_model(&CircleEnsemble::new(40, 1.3).unwrap()).unwrap();
        assert!(m.probs().windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn mgf_single_factor_closed_form() {
        let ens = CircleEnsemble::new(1, 0.5).unwrap();
        assert_eq!(circle_mgf(&ens, 0.0).unwrap(), 0.0);
        // (2nρe^z)² = 4 at z = log 2: log((4+1)/(1+1)) = log(5/2).
        let got = circle_mgf(&ens, 2.0f64.ln()).unwrap();
        assert!((got - 2.5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn factor_identity_matches_bernoulli_product() {
        let ens = CircleEnsemble::new(73, 0.8).unwrap();
        let model = circle_model(&ens).unwrap();
        for z in [-2.0, -0.4, 0.0, 0.3, 1.7] {
            let a = circle_mgf(&ens, z).unwrap();
            let b = model.log_mgf(z);
            assert!((a - b).abs() < 1e-11 * (1.0 + a.abs()), "z={z}: {a} vs {b}");
        }
    }
}

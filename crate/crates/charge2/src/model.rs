//! The doubled-Bernoulli representation: `count = 2 Σ Bernoulli(p_k)` with
//! independent factors. Both ensembles reduce to this model, and everything
//! exact (PMF, cumulants, MGF, characteristic function) is computed from it.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// n independent success probabilities, each strictly inside (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct DoubledBernoulliModel {
    probs: Vec<f64>,
    label: String,
}

impl DoubledBernoulliModel {
    pub fn new(probs: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidInput("model needs at least one factor".into()));
        }
        for (k, &p) in probs.iter().enumerate() {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "success probability {k} is {p}, outside (0, 1); degenerate factors are rejected"
                )));
            }
        }
        Ok(Self {
            probs,
            label: label.into(),
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn factor_count(&self) -> usize {
        self.probs.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `log E[e^{z·count}] = Σ log(1 - p_k + p_k e^{2z})`, exact for every
    /// real `z`; the factor shift keeps it finite for arbitrarily large `z`.
    pub fn log_mgf(&self, z: f64) -> f64 {
        let two_z = 2.0 * z;
        self.probs
            .iter()
            .map(|&p| {
                let q = 1.0 - p;
                if two_z <= 0.0 {
                    (q + p * two_z.exp()).ln()
                } else {
                    two_z + (p + q * (-two_z).exp()).ln()
                }
            })
            .sum()
    }

    /// Complex log-MGF, summed factor-wise so each factor uses the principal
    /// branch; no global logarithm is ever taken.
    ///
    /// Each factor is computed as `log(1 + p (e^{2z} - 1))` with an expm1-style
    /// difference, which makes the value exactly zero at `z = 0` and keeps
    /// full relative accuracy for the small arguments the mod-Gaussian
    /// residuals and zone-of-control grids use.
    pub fn log_mgf_complex(&self, z: Complex64) -> Complex64 {
        let w = 2.0 * z;
        self.probs.iter().map(|&p| log_factor_complex(p, w)).sum()
    }

    /// Characteristic function of the centered, scaled count:
    /// `E[exp(iξ (count − center)/scale)]`.
    pub fn char_fn_centered_scaled(&self, xi: f64, center: f64, scale: f64) -> Complex64 {
        let z = Complex64::new(0.0, xi / scale);
        (self.log_mgf_complex(z) - z * center).exp()
    }
}

/// `log(1 + p (e^w - 1))` on the principal branch.
fn log_factor_complex(p: f64, w: Complex64) -> Complex64 {
    ln_1p_complex(p * exp_m1_complex(w))
}

/// `e^w - 1 = expm1(a)·cos b - 2 sin²(b/2) + i e^a sin b`, stable near 0.
pub(crate) fn exp_m1_complex(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    Complex64::new(w.re.exp_m1() * c - 2.0 * half * half, w.re.exp() * s)
}

pub(crate) fn ln_1p_complex(u: Complex64) -> Complex64 {
    if u.norm_sqr() < 1e-8 {
        // log(1+u) = u - u²/2 + u³/3 - u⁴/4, remainder |u|⁵/5 < 1e-20
        let u2 = u * u;
        u - 0.5 * u2 + u2 * u / 3.0 - u2 * u2 * 0.25
    } else {
        (Complex64::new(1.0, 0.0) + u).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_probabilities() {
        assert!(DoubledBernoulliModel::new(vec![], "empty").is_err());
        assert!(DoubledBernoulliModel::new(vec![0.0], "zero").is_err());
        assert!(DoubledBernoulliModel::new(vec![1.0], "one").is_err());
        assert!(DoubledBernoulliModel::new(vec![0.5, f64::NAN], "nan").is_err());
        assert!(DoubledBernoulliModel::new(vec![0.5], "ok").is_ok());
    }

    #[test]
    fn single_factor_mgf() {
        // p = 2/3 at z = log 2: log(1/3 + (2/3)·4) = log 3.
        let m = DoubledBernoulliModel::new(vec![2.0 / 3.0], "one").unwrap();
        let got = m.log_mgf(2.0f64.ln());
        assert!((got - 3.0f64.ln()).abs() < 1e-14);
        assert_eq!(m.log_mgf(0.0), 0.0);
    }

    #[test]
    fn mgf_huge_argument_stays_finite() {
        let m = DoubledBernoulliModel::new(vec![0.3, 0.9], "pair").unwrap();
        let z = 500.0;
        // Dominant behaviour is 2z per factor plus log p.
        let expected = 2.0 * (2.0 * z) + 0.3f64.ln() + 0.9f64.ln();
        assert!((m.log_mgf(z) - expected).abs() < 1e-9);
        assert!(m.log_mgf(-500.0).is_finite());
    }

    #[test]
    fn complex_mgf_matches_real_on_axis() {
        let m = DoubledBernoulliModel::new(vec![0.2, 0.5, 0.77], "trio").unwrap();
        for z in [-0.7, -0.05, 0.0, 0.33, 1.1] {
            let real = m.log_mgf(z);
            let complex = m.log_mgf_complex(Complex64::new(z, 0.0));
            assert!((complex.re - real).abs() < 1e-12, "z={z}");
            assert!(complex.im.abs() < 1e-12, "z={z}");
        }
    }

    #[test]
    fn char_fn_is_exact_one_at_zero() {
        let m = DoubledBernoulliModel::new(vec![0.2, 0.5, 0.77], "trio").unwrap();
        let cf = m.char_fn_centered_scaled(0.0, 1.5, 2.0);
        assert_eq!(cf, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn char_fn_modulus_at_most_one() {
        let m = DoubledBernoulliModel::new(vec![0.9, 0.1, 0.4, 0.6], "quad").unwrap();
        for i in 0..200 {
            let xi = -3.0 + 0.03 * i as f64;
            let cf = m.char_fn_centered_scaled(xi, 0.8, 1.0);
            assert!(cf.norm() <= 1.0 + 1e-12, "xi={xi}, |cf|={}", cf.norm());
        }
    }
}

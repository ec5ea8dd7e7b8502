//! Exact finite-n distribution engine for a [`DoubledBernoulliModel`]:
//! PMF by factor convolution, closed-form cumulants, seeded sampling,
//! Kolmogorov distance to the standard normal, and exact tail sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::model::DoubledBernoulliModel;

/// Default factor-count cap for PMF construction (O(n²) cost).
pub const DEFAULT_PMF_CAP: u32 = 5000;

/// Exact law of the count on the even lattice `{0, 2, …, 2n}`, stored over
/// the compressed index `j = count / 2`. The even-lattice structure is a
/// representation invariant, not a runtime check.
#[derive(Debug, Clone)]
pub struct ExactPmf {
    mass: Vec<f64>,
}

impl ExactPmf {
    /// Number of factors n; the support is `{0, 2, …, 2n}`.
    pub fn factor_count(&self) -> usize {
        self.mass.len() - 1
    }

    /// `mass[j] = P[count = 2j]`.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Lattice value of atom `j`.
    pub fn value(&self, j: usize) -> f64 {
        2.0 * j as f64
    }

    pub fn total(&self) -> f64 {
        neumaier_sum(self.mass.iter().copied())
    }

    /// Mean and variance by direct summation over the atoms.
    pub fn mean_variance(&self) -> (f64, f64) {
        let mean = neumaier_sum(self.mass.iter().enumerate().map(|(j, &p)| p * (2 * j) as f64));
        let var = neumaier_sum(self.mass.iter().enumerate().map(|(j, &p)| {
            let d = (2 * j) as f64 - mean;
            p * d * d
        }));
        (mean, var)
    }

    /// Probability of the open interval `(lo, hi)` (strict on both sides).
    pub fn open_interval(&self, lo: f64, hi: f64) -> (f64, usize) {
        let mut atoms = 0usize;
        let sum = neumaier_sum(self.mass.iter().enumerate().filter_map(|(j, &p)| {
            let v = (2 * j) as f64;
            if v > lo && v < hi {
                atoms += 1;
                Some(p)
            } else {
                None
            }
        }));
        (sum, atoms)
    }
}

/// Convolve the factors `(1 - p_k) + p_k t²` into the exact PMF.
pub fn exact_pmf(model: &DoubledBernoulliModel) -> Result<ExactPmf> {
    exact_pmf_capped(model, DEFAULT_PMF_CAP)
}

pub fn exact_pmf_capped(model: &DoubledBernoulliModel, cap: u32) -> Result<ExactPmf> {
    let n = model.factor_count();
    if n > cap as usize {
        return Err(Error::CapExceeded {
            what: "exact PMF convolution",
            n: n as u32,
            cap,
        });
    }
    let mut mass = Vec::with_capacity(n + 1);
    mass.push(1.0);
    for (used, &p) in model.probs().iter().enumerate() {
        let q = 1.0 - p;
        mass.push(p * mass[used]);
        for j in (1..=used).rev() {
            mass[j] = q * mass[j] + p * mass[j - 1];
        }
        mass[0] *= q;
    }
    Ok(ExactPmf { mass })
}

/// First three cumulants of the doubled sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantTriple {
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
}

/// Closed forms for `2 Σ Bernoulli(p_k)`:
/// κ₁ = 2Σp, κ₂ = 4Σp(1-p), κ₃ = 8Σp(1-p)(1-2p).
pub fn exact_cumulants(model: &DoubledBernoulliModel) -> CumulantTriple {
    let k1 = neumaier_sum(model.probs().iter().map(|&p| 2.0 * p));
    let k2 = neumaier_sum(model.probs().iter().map(|&p| 4.0 * p * (1.0 - p)));
    let k3 = neumaier_sum(
        model
            .probs()
            .iter()
            .map(|&p| 8.0 * p * (1.0 - p) * (1.0 - 2.0 * p)),
    );
    CumulantTriple {
        kappa1: k1,
        kappa2: k2,
        kappa3: k3,
    }
}

/// Cross-check oracle: cumulants from 4th-order central differences of a
/// cumulant generating function at 0.
pub fn mgf_numeric_cumulants(logmgf: impl Fn(f64) -> f64, h: f64) -> Result<CumulantTriple> {
    if !(h > 0.0 && h <= 0.1) {
        return Err(Error::InvalidInput(format!(
            "step must lie in (0, 0.1], got {h}"
        )));
    }
    let f = |k: f64| logmgf(k * h);
    let (f0, f1, f2, f3) = (f(0.0), f(1.0), f(2.0), f(3.0));
    let (g1, g2, g3) = (f(-1.0), f(-2.0), f(-3.0));
    let kappa1 = (-f2 + 8.0 * f1 - 8.0 * g1 + g2) / (12.0 * h);
    let kappa2 = (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * g1 - g2) / (12.0 * h * h);
    let kappa3 = (-f3 + 8.0 * f2 - 13.0 * f1 + 13.0 * g1 - 8.0 * g2 + g3) / (8.0 * h * h * h);
    Ok(CumulantTriple {
        kappa1,
        kappa2,
        kappa3,
    })
}

/// Seeded sampling of the count: one independent Bernoulli draw per factor,
/// one derived RNG stream per sample, so the output is deterministic in
/// `seed` and independent of the parallel schedule.
pub fn sample(model: &DoubledBernoulliModel, count: usize, seed: u64) -> Result<Vec<u32>> {
    if count == 0 {
        return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
    }
    let probs = model.probs();
    let draw = |i: usize| -> u32 {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let successes: u32 = probs
            .iter()
            .map(|&p| u32::from(rng.gen::<f64>() < p))
            .sum();
        2 * successes
    };
    let out: Vec<u32> = if count >= 1024 {
        (0..count).into_par_iter().map(draw).collect()
    } else {
        (0..count).map(draw).collect()
    };
    Ok(out)
}

/// Kolmogorov distance between the standardized exact law and N(0, 1).
///
/// The law is a lattice law, so the sup is attained at atom jump points;
/// both one-sided CDF limits are evaluated at every atom.
pub fn kolmogorov_distance_to_normal(pmf: &ExactPmf) -> Result<f64> {
    let (mean, var) = pmf.mean_variance();
    if !(var > 0.0) {
        return Err(Error::InvalidInput(
            "degenerate law: variance must be positive to standardize".into(),
        ));
    }
    let sd = var.sqrt();
    let mut cum = 0.0;
    let mut d = 0.0f64;
    for (j, &p) in pmf.mass().iter().enumerate() {
        let x = ((2 * j) as f64 - mean) / sd;
        let phi = std_normal_cdf(x);
        let before = cum;
        cum += p;
        d = d.max((before - phi).abs()).max((cum - phi).abs());
    }
    Ok(d)
}

pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Which tail an exact sum covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    Geq,
    Leq,
}

/// Exact tail sum over the lattice atoms meeting the inequality.
pub fn tail_probability(pmf: &ExactPmf, threshold: f64, side: TailSide) -> f64 {
    let mass = pmf.mass();
    match side {
        TailSide::Geq => {
            // Sum top-down: in the right tail the atoms grow toward the bulk,
            // so this accumulates in ascending magnitude.
            let j0 = ((threshold / 2.0).ceil().max(0.0)) as usize;
            neumaier_sum((j0..mass.len()).rev().map(|j| mass[j]))
        }
        TailSide::Leq => {
            if threshold < 0.0 {
                return 0.0;
            }
            let j1 = ((threshold / 2.0).floor()) as usize;
            neumaier_sum((0..=j1.min(mass.len() - 1)).map(|j| mass[j]))
        }
    }
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

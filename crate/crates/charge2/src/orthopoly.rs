//! Generalized Laguerre polynomials `L_n^α`: log-space evaluation at negative
//! arguments and root finding.
//!
//! The ensembles only ever need `L_n^{-1/2}` at arguments `-y` with `y > 0`,
//! where every term of the series
//! `L_n^α(-y) = Σ_k binom(n+α, n-k) y^k / k!`
//! is positive, so the value is accumulated as a log-sum-exp and can never
//! overflow. Roots are eigenvalues of the symmetric tridiagonal Jacobi matrix
//! of the orthogonality measure (Golub–Welsch), found by Sturm-sequence
//! bisection and polished with one bracketed Newton step.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// The α used by the line ensemble.
pub const ENSEMBLE_ALPHA: f64 = -0.5;

/// Relative tolerance on eigenvalues.
const EIGEN_REL_TOL: f64 = 1e-14;

/// Bisection budget per eigenvalue; a call of degree n gets 100·n in total.
const STEPS_PER_ROOT: u64 = 100;

/// A Laguerre family member `L_n^α`.
///
/// Invariants: `n ≥ 1` and `α > -1` (weight `x^α e^{-x}` integrable on
/// `(0, ∞)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreBasis {
    n: u32,
    alpha: f64,
}

impl LaguerreBasis {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("degree must be ≥ 1, got {n}")));
        }
        if !(alpha > -1.0) {
            return Err(Error::InvalidInput(format!(
                "alpha must be > -1 for an integrable weight, got {alpha}"
            )));
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `log L_n^α(-y)` for `y > 0`.
    pub fn log_at_negative(&self, y: f64) -> Result<f64> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(Error::InvalidInput(format!("y must be positive, got {y}")));
        }
        Ok(log_at_negative_ln(self.n, self.alpha, y.ln()))
    }

    /// Roots of `L_n^α`, ascending, with per-root relative residuals.
    pub fn roots(&self) -> Result<RootSet> {
        roots_impl(self.n, self.alpha)
    }
}

/// Sorted roots `ξ_{1,n} < … < ξ_{n,n}` of `L_n^α`, all positive, together
/// with the relative residual `|L_n(ξ)| / |L_n'(ξ)·ξ|` at each root.
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<f64>,
    residuals: Vec<f64>,
}

impl RootSet {
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_relative_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |a, &b| a.max(b))
    }
}

/// `log L_n^{-1/2}(-y)` for `y > 0` (the ensemble evaluation).
pub fn laguerre_log_at_negative(n: u32, y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::InvalidInput(format!("y must be positive, got {y}")));
    }
    Ok(log_at_negative_ln(n, ENSEMBLE_ALPHA, y.ln()))
}

/// Same as [`laguerre_log_at_negative`] but takes `ln y`, so the argument
/// itself can be far beyond f64 range. This is what keeps the MGF evaluable
/// for any real `z`.
pub fn laguerre_log_at_negative_ln(n: u32, ln_y: f64) -> f64 {
    log_at_negative_ln(n, ENSEMBLE_ALPHA, ln_y)
}

/// Roots of `L_n^{-1/2}`.
pub fn laguerre_roots(n: u32) -> Result<RootSet> {
    roots_impl(n, ENSEMBLE_ALPHA)
}

/// Shared-cache variant of [`laguerre_roots`]; root sets are immutable and
/// reused heavily across the exact engine, the MGF cross-checks and the
/// verification sweeps.
pub fn laguerre_roots_cached(n: u32) -> Result<Arc<RootSet>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RootSet>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let fresh = Arc::new(laguerre_roots(n)?);
    cache
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| fresh.clone());
    Ok(fresh)
}

fn log_at_negative_ln(n: u32, alpha: f64, ln_y: f64) -> f64 {
    if n == 0 {
        return 0.0; // L_0 ≡ 1
    }
    // Every series term binom(n+α, n-k) y^k / k! is positive for α > -1,
    // so a log-sum-exp over term logs is exact up to rounding.
    let nf = f64::from(n);
    let lg_top = ln_gamma(nf + alpha + 1.0);
    let mut logs = Vec::with_capacity(n as usize + 1);
    let mut max = f64::NEG_INFINITY;
    for k in 0..=n {
        let kf = f64::from(k);
        let term = lg_top - ln_gamma(kf + alpha + 1.0) - ln_gamma(nf - kf + 1.0)
            - ln_gamma(kf + 1.0)
            + kf * ln_y;
        max = max.max(term);
        logs.push(term);
    }
    let sum: f64 = logs.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

/// Jacobi matrix of the Laguerre weight: diagonal `2k+α+1` (k = 0..n-1),
/// off-diagonal `√(k(k+α))` (k = 1..n-1). Its eigenvalues are the roots.
fn jacobi_matrix(n: u32, alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = (0..n)
        .map(|k| 2.0 * f64::from(k) + alpha + 1.0)
        .collect();
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = f64::from(k);
            (kf * (kf + alpha)).sqrt()
        })
        .collect();
    (diag, off)
}

/// Number of eigenvalues strictly below `x` (negative pivots of the LDLᵀ
/// Sturm sequence).
fn sturm_count(diag: &[f64], off_sq: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0usize;
    let mut d = diag[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if d.abs() < pivmin {
            if d < 0.0 {
                -pivmin
            } else {
                pivmin
            }
        } else {
            d
        };
        d = (diag[i] - x) - off_sq[i - 1] / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// `(L_n^α(x), d/dx L_n^α(x))` by the three-term recurrence, for the Newton
/// polish. Only ever called inside the oscillatory region, where the
/// recurrence is well scaled.
fn eval_with_derivative(n: u32, alpha: f64, x: f64) -> (f64, f64) {
    let mut prev = 1.0; // L_0
    let mut cur = 1.0 + alpha - x; // L_1
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    // L_n'(x) = (n L_n(x) - (n+α) L_{n-1}(x)) / x
    let nf = f64::from(n);
    let deriv = (nf * cur - (nf + alpha) * prev) / x;
    (cur, deriv)
}

fn roots_impl(n: u32, alpha: f64) -> Result<RootSet> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("degree must be ≥ 1, got {n}")));
    }
    if !(alpha > -1.0) {
        return Err(Error::InvalidInput(format!(
            "alpha must be > -1, got {alpha}"
        )));
    }
    let (diag, off) = jacobi_matrix(n, alpha);
    let off_sq: Vec<f64> = off.iter().map(|b| b * b).collect();

    // Gershgorin bounds
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n as usize {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i < n as usize - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;

    let max_off_sq = off_sq.iter().fold(0.0f64, |a, &b| a.max(b));
    let pivmin = f64::MIN_POSITIVE.sqrt() * max_off_sq.max(1.0);

    let find_one = |k: usize| -> Result<(f64, f64)> {
        let mut a = lo;
        let mut b = hi;
        let mut steps = 0u64;
        while b - a > EIGEN_REL_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            if steps >= STEPS_PER_ROOT {
                return Err(Error::Eigensolve {
                    degree: n,
                    budget: STEPS_PER_ROOT * u64::from(n),
                });
            }
            steps += 1;
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break; // interval no longer splittable in f64
            }
            if sturm_count(&diag, &off_sq, mid, pivmin) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        let mut root = 0.5 * (a + b);
        // One bracketed Newton step on the recurrence-evaluated polynomial.
        let (val, deriv) = eval_with_derivative(n, alpha, root);
        if deriv != 0.0 {
            let candidate = root - val / deriv;
            if candidate.is_finite() && candidate > a && candidate < b {
                root = candidate;
            }
        }
        let (val, deriv) = eval_with_derivative(n, alpha, root);
        let residual = if deriv != 0.0 && root != 0.0 {
            (val / (deriv * root)).abs()
        } else {
            f64::INFINITY
        };
        Ok((root, residual))
    };

    let pairs: Vec<(f64, f64)> = if n >= 64 {
        (0..n as usize)
            .into_par_iter()
            .map(find_one)
            .collect::<Result<_>>()?
    } else {
        (0..n as usize).map(find_one).collect::<Result<_>>()?
    };

    let roots: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let residuals: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    for i in 0..roots.len() {
        if !(roots[i] > 0.0) {
            return Err(Error::Numeric(format!(
                "root {i} of L_{n} is not positive: {}",
                roots[i]
            )));
        }
        if i > 0 && roots[i] <= roots[i - 1] {
            return Err(Error::Numeric(format!(
                "roots of L_{n} not strictly increasing at index {i}"
            )));
        }
    }
    Ok(RootSet { roots, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct linear-space series sum; independent oracle for small n.
    fn series_value_at_negative(n: u32, alpha: f64, y: f64) -> f64 {
        let nf = f64::from(n);
        (0..=n)
            .map(|k| {
                let kf = f64::from(k);
                let ln_term = ln_gamma(nf + alpha + 1.0)
                    - ln_gamma(kf + alpha + 1.0)
                    - ln_gamma(nf - kf + 1.0)
                    - ln_gamma(kf + 1.0)
                    + kf * y.ln();
                ln_term.exp()
            })
            .sum()
    }

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(laguerre_log_at_negative(0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn degree_one_closed_form() {
        // L_1^α(x) = 1 + α - x, so L_1^{-1/2}(-2) = 5/2.
        let got = laguerre_log_at_negative(1, 2.0).unwrap();
        assert!((got - (2.5f64).ln()).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn degree_three_matches_series_oracle() {
        let oracle = series_value_at_negative(3, ENSEMBLE_ALPHA, 1.0);
        let got = laguerre_log_at_negative(3, 1.0).unwrap();
        assert!((got - oracle.ln()).abs() < 1e-13);
        // The same sum by hand is 5/16 + 15/8 + 5/4 + 1/6 = 173/48.
        assert!((got - (173.0f64 / 48.0).ln()).abs() < 1e-13);
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(laguerre_log_at_negative(3, 0.0).is_err());
        assert!(laguerre_log_at_negative(3, -1.0).is_err());
    }

    #[test]
    fn root_of_degree_one() {
        let rs = laguerre_roots(1).unwrap();
        assert_eq!(rs.len(), 1);
        assert!((rs.roots()[0] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn roots_of_degree_two() {
        // L_2^{-1/2}(x) = x²/2 - 3x/2 + 3/8, roots (3 ± √6)/2.
        let rs = laguerre_roots(2).unwrap();
        let lo = (3.0 - 6.0f64.sqrt()) / 2.0;
        let hi = (3.0 + 6.0f64.sqrt()) / 2.0;
        assert!((rs.roots()[0] - lo).abs() < 1e-13);
        assert!((rs.roots()[1] - hi).abs() < 1e-13);
    }

    #[test]
    fn degree_twenty_roots_are_clean() {
        let rs = laguerre_roots(20).unwrap();
        assert_eq!(rs.len(), 20);
        assert!(rs.roots().windows(2).all(|w| w[0] < w[1]));
        assert!(rs.roots()[0] > 0.0);
        assert!(
            rs.max_relative_residual() < 1e-10,
            "max residual {}",
            rs.max_relative_residual()
        );
    }

    #[test]
    fn roots_interlace_up_to_200() {
        let mut prev = laguerre_roots(1).unwrap();
        for n in 2..=200u32 {
            let cur = laguerre_roots(n).unwrap();
            // ξ_{k,n+1} < ξ_{k,n} < ξ_{k+1,n+1}
            for k in 0..prev.len() {
                assert!(
                    cur.roots()[k] < prev.roots()[k] && prev.roots()[k] < cur.roots()[k + 1],
                    "interlacing broken at n={n}, k={k}"
                );
            }
            prev = cur;
        }
    }

    #[test]
    fn root_sum_equals_jacobi_trace() {
        for n in [1u32, 2, 5, 17, 60, 200] {
            let rs = laguerre_roots(n).unwrap();
            let sum: f64 = rs.roots().iter().sum();
            let trace: f64 = (0..n)
                .map(|k| 2.0 * f64::from(k) + ENSEMBLE_ALPHA + 1.0)
                .sum();
            assert!(
                (sum - trace).abs() <= 1e-10 * trace.abs(),
                "n={n}: root sum {sum} vs trace {trace}"
            );
        }
    }

    #[test]
    fn monic_product_reconciles_with_log_series() {
        // log Π (y + ξ_k) = log L_n(-y) + log n!, leading coefficient (-1)^n/n!.
        for n in [1u32, 2, 5, 10, 50, 100] {
            let rs = laguerre_roots(n).unwrap();
            for y in [0.1, 1.0, 10.0, 100.0] {
                let prod: f64 = rs.roots().iter().map(|&xi| (y + xi).ln()).sum();
                let series = laguerre_log_at_negative(n, y).unwrap()
                    + ln_gamma(f64::from(n) + 1.0);
                assert!(
                    (prod - series).abs() <= 1e-9 * series.abs().max(1.0),
                    "n={n}, y={y}: {prod} vs {series}"
                );
            }
        }
    }

    #[test]
    fn cached_roots_match_fresh() {
        let fresh = laguerre_roots(30).unwrap();
        let cached = laguerre_roots_cached(30).unwrap();
        assert_eq!(fresh.roots(), cached.roots());
    }

    #[test]
    fn basis_invariants_enforced() {
        assert!(LaguerreBasis::new(0, -0.5).is_err());
        assert!(LaguerreBasis::new(3, -1.0).is_err());
        assert!(LaguerreBasis::new(3, -0.5).is_ok());
    }
}

//! Small numeric kernels: adaptive Simpson quadrature and a log-space
//! Laplace-type integral used by the MGF cross-check.

use crate::error::{Error, Result};

/// Adaptive Simpson on `[a, b]` with absolute tolerance `eps`.
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    eps: f64,
    max_depth: u32,
) -> Result<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * eps {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::Quadrature(format!(
                "adaptive Simpson exhausted its depth on [{a}, {b}]"
            )));
        }
        let l = rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)?;
        let r = rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)?;
        Ok(l + r)
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, eps, max_depth)
}

/// `log ∫_0^∞ e^{-scale · g(s)} ds` for a strictly convex `g` with interior
/// minimizer `s_star` and `g → ∞` at both ends of `(0, ∞)`.
///
/// The integrand is renormalized by its peak value so only numbers in
/// `[0, 1]` are ever materialized; the bracket is expanded until the
/// discarded tails are below e^{-80} of the peak.
pub fn log_laplace_integral(
    g: &impl Fn(f64) -> f64,
    scale: f64,
    s_star: f64,
) -> Result<f64> {
    const TAIL_LOG: f64 = 80.0;
    const MAX_EXPAND: u32 = 4000;

    let g_min = g(s_star);
    if !g_min.is_finite() {
        return Err(Error::Quadrature(format!(
            "integrand minimum not finite at s = {s_star}"
        )));
    }

    let mut lo = s_star;
    let mut steps = 0;
    while scale * (g(lo) - g_min) < TAIL_LOG {
        lo /= 1.5;
        steps += 1;
        if steps > MAX_EXPAND || lo < f64::MIN_POSITIVE {
            return Err(Error::Quadrature("left bracket expansion failed".into()));
        }
    }
    let mut hi = s_star;
    steps = 0;
    while scale * (g(hi) - g_min) < TAIL_LOG {
        hi *= 1.5;
        steps += 1;
        if steps > MAX_EXPAND || !hi.is_finite() {
            return Err(Error::Quadrature("right bracket expansion failed".into()));
        }
    }

    let h = |s: f64| (-scale * (g(s) - g_min)).exp();
    // Split at the peak so the first Simpson estimate on each panel sees it.
    let eps = 1e-13 * (hi - lo).max(1.0);
    let left = adaptive_simpson(&h, lo, s_star, eps, 52)?;
    let right = adaptive_simpson(&h, s_star, hi, eps, 52)?;
    let total = left + right;
    if !(total > 0.0) {
        return Err(Error::Quadrature("laplace integral collapsed to zero".into()));
    }
    Ok(total.ln() - scale * g_min)
}

/// `log(e^a + e^b)` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_polynomial_exactly() {
        // Simpson is exact on cubics.
        let f = |x: f64| 3.0 * x * x;
        let got = adaptive_simpson(&f, 0.0, 2.0, 1e-12, 30).unwrap();
        assert!((got - 8.0).abs() < 1e-10);
    }

    #[test]
    fn laplace_gaussian_bump() {
        // ∫ e^{-N(s-2)²} ds = √(π/N); the missed left tail below s=0 is e^{-4N}.
        let n = 50.0;
        let g = |s: f64| (s - 2.0) * (s - 2.0);
        let got = log_laplace_integral(&g, n, 2.0).unwrap();
        let expect = 0.5 * (std::f64::consts::PI / n).ln();
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
    }

    #[test]
    fn log_add_exp_extremes() {
        assert!((log_add_exp(0.0, 0.0) - 2.0f64.ln()).abs() < 1e-15);
        assert!((log_add_exp(-1000.0, 0.0) - 0.0).abs() < 1e-15);
        assert!((log_add_exp(1000.0, -1000.0) - 1000.0).abs() < 1e-12);
    }
}

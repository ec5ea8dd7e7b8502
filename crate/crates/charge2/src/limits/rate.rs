//! LDP rate functions: closed forms where available, and a numerical
//! Legendre–Fenchel transform (safeguarded Newton on the monotone derivative
//! with a bisection fallback) for the circle and for cross-validation.

use crate::error::{Error, Result};
use crate::limits::profile::t0;

/// LDP speed attached to a rate function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Speed {
    /// `s_n = 2n` (scaled line model, scaling `U_n/2n`).
    TwiceN,
    /// `s_n = 2√n` (unit line model, scaling `U_n/2√n`).
    TwiceSqrtN,
    /// `s_n = n` (circle model, scaling `V_n/n`).
    N,
}

impl Speed {
    pub fn value(&self, n: u32) -> f64 {
        let nf = f64::from(n);
        match self {
            Speed::TwiceN => 2.0 * nf,
            Speed::TwiceSqrtN => 2.0 * nf.sqrt(),
            Speed::N => nf,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Speed::TwiceN => "2n",
            Speed::TwiceSqrtN => "2sqrt(n)",
            Speed::N => "n",
        }
    }
}

/// An evaluable convex rate function with its minimizer and speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateFunction {
    LineScaled { gamma: f64 },
    LineUnit,
    Circle { rho: f64 },
}

impl RateFunction {
    pub fn line_scaled(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        Ok(RateFunction::LineScaled { gamma })
    }

    pub fn line_unit() -> Self {
        RateFunction::LineUnit
    }

    pub fn circle(rho: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rho must be positive, got {rho}"
            )));
        }
        Ok(RateFunction::Circle { rho })
    }

    /// Open interval on which the rate function is finite and evaluated.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            RateFunction::LineScaled { .. } => (0.0, 1.0),
            RateFunction::LineUnit => (0.0, f64::INFINITY),
            RateFunction::Circle { .. } => (0.0, 2.0),
        }
    }

    /// The point where the rate vanishes (the law-of-large-numbers value).
    pub fn minimizer(&self) -> f64 {
        match *self {
            RateFunction::LineScaled { gamma } => 1.0 / t0(gamma),
            RateFunction::LineUnit => 1.0,
            RateFunction::Circle { rho } => 2.0 * rho * (1.0 / rho).atan(),
        }
    }

    pub fn speed(&self) -> Speed {
        match self {
            RateFunction::LineScaled { .. } => Speed::TwiceN,
            RateFunction::LineUnit => Speed::TwiceSqrtN,
            RateFunction::Circle { .. } => Speed::N,
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match *self {
            RateFunction::LineScaled { gamma } => line_rate_scaled(gamma, x),
            RateFunction::LineUnit => line_rate_unit(x),
            RateFunction::Circle { rho } => circle_rate(rho, x),
        }
    }
}

/// `a(γ) = -½(1 + log 2γ)`, the linear coefficient of the scaled-line rate.
pub fn line_rate_linear_coefficient(gamma: f64) -> f64 {
    -0.5 * (1.0 + (2.0 * gamma).ln())
}

/// `b(γ)`: the constant anchoring `Λ*(x*) = 0` at `x* = √(γ²+2γ) - γ`.
pub fn line_rate_constant(gamma: f64) -> f64 {
    let x = 1.0 / t0(gamma);
    -(x * x.ln() + 0.5 * (1.0 - x) * (1.0 - x).ln() + line_rate_linear_coefficient(gamma) * x)
}

/// Scaled-line rate function on (0, 1), speed 2n:
/// `Λ*(x) = x log x + (1-x)/2 · log(1-x) + a(γ) x + b(γ)`.
pub fn line_rate_scaled(gamma: f64, x: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidInput(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!(
            "scaled-line rate is defined on (0, 1); got x = {x}"
        )));
    }
    Ok(x * x.ln()
        + 0.5 * (1.0 - x) * (1.0 - x).ln()
        + line_rate_linear_coefficient(gamma) * x
        + line_rate_constant(gamma))
}

/// Unit-line rate function on (0, ∞), speed 2√n, scaling `U_n/(2√n)`:
/// `Λ*(x) = x log x - x + 1`, minimum 0 at x = 1.
pub fn line_rate_unit(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "unit-line rate is defined for x > 0; got {x}"
        )));
    }
    Ok(x * x.ln() - x + 1.0)
}

/// Scaled-line limiting cumulant generating function per 2n, via the
/// saddle parametrization `t(z) = ½(1 + √(1 + 2e^{-2z}/γ))`:
/// `Λ(z) = Λ̂(t(z)) - Λ̂(t₀)` with `Λ̂(t) = -½log(1 - 1/t) + 1/(2t)`.
pub fn line_lambda(gamma: f64, z: f64) -> f64 {
    lambda_hat(saddle_t(gamma, z)) - lambda_hat(t0(gamma))
}

/// `Λ'(z) = 1/t(z)`, strictly increasing with range (0, 1).
pub fn line_lambda_prime(gamma: f64, z: f64) -> f64 {
    1.0 / saddle_t(gamma, z)
}

/// `Λ''(z) = 2(t-1)/(t(2t-1))` at `t = t(z)`.
pub fn line_lambda_second(gamma: f64, z: f64) -> f64 {
    let t = saddle_t(gamma, z);
    2.0 * (t - 1.0) / (t * (2.0 * t - 1.0))
}

fn saddle_t(gamma: f64, z: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 2.0 * (-2.0 * z).exp() / gamma).sqrt())
}

fn lambda_hat(t: f64) -> f64 {
    -0.5 * (1.0 - 1.0 / t).ln() + 0.5 / t
}

/// Circle limiting cumulant generating function per n:
/// `Λ(z) = 2ρe^z arctan(1/(ρe^z)) - 2ρ arctan(1/ρ) + log((ρ²e^{2z}+1)/(ρ²+1))`.
pub fn circle_lambda(rho: f64, z: f64) -> f64 {
    let re = rho * z.exp();
    2.0 * re * (1.0f64).atan2(re) - 2.0 * rho * (1.0 / rho).atan()
        + 2.0 * (re.hypot(1.0).ln() - rho.hypot(1.0).ln())
}

/// `Λ'(z) = 2ρe^z arctan(1/(ρe^z))`, strictly increasing with range (0, 2).
pub fn circle_lambda_prime(rho: f64, z: f64) -> f64 {
    let re = rho * z.exp();
    2.0 * re * (1.0f64).atan2(re)
}

/// `Λ''(z) = Λ'(z) - 2w/(1+w)` with `w = (ρe^z)²`.
pub fn circle_lambda_second(rho: f64, z: f64) -> f64 {
    let re = rho * z.exp();
    let frac = if re > 1.0 {
        let inv = 1.0 / re;
        1.0 / (1.0 + inv * inv)
    } else {
        let w = re * re;
        w / (1.0 + w)
    };
    circle_lambda_prime(rho, z) - 2.0 * frac
}

/// Boundary behaviour of the circle rate function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRateBoundary {
    /// `lim_{x↓0} Λ*(x) = 2ρ arctan(1/ρ) + log(1+ρ²)`, finite and positive.
    pub limit_at_zero: f64,
    /// The same constant with an overall minus sign, a variant that appears
    /// in some statements of this limit. A rate function is nonnegative, so
    /// the negative-signed form cannot be the rate value; it is reported
    /// for comparison and flagged, never used.
    pub negated_variant_at_zero: f64,
    /// `Λ*(x) → ∞ as x ↑ 2`.
    pub diverges_at_two: bool,
}

pub fn circle_rate_boundary(rho: f64) -> CircleRateBoundary {
    let v = 2.0 * rho * (1.0 / rho).atan() + (1.0 + rho * rho).ln();
    CircleRateBoundary {
        limit_at_zero: v,
        negated_variant_at_zero: -v,
        diverges_at_two: true,
    }
}

/// Circle rate function on (0, 2), speed n, as the Legendre dual of
/// [`circle_lambda`].
pub fn circle_rate(rho: f64, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 2.0) {
        let b = circle_rate_boundary(rho);
        return Err(Error::Domain(format!(
            "circle rate is defined on (0, 2); got x = {x}. Boundary behaviour: \
             Λ*(x) → {:.12} as x ↓ 0 (the negated variant {:.12} is flagged, not used) \
             and Λ*(x) → ∞ as x ↑ 2",
            b.limit_at_zero, b.negated_variant_at_zero
        )));
    }
    legendre_transform(
        &|z| circle_lambda(rho, z),
        &|z| circle_lambda_prime(rho, z),
        Some(&|z| circle_lambda_second(rho, z)),
        x,
    )
}

/// Legendre–Fenchel transform `Λ*(x) = x z* - Λ(z*)` where `Λ'(z*) = x`,
/// for a strictly increasing `Λ'`.
///
/// The root is bracketed by doubling from 0, then found by Newton steps
/// (using `Λ''` when supplied, a central difference otherwise) safeguarded
/// by bisection; the bracket guarantees termination at 1e-12.
pub fn legendre_transform<L, P, S>(
    lambda: &L,
    lambda_prime: &P,
    lambda_second: Option<&S>,
    x: f64,
) -> Result<f64>
where
    L: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
    S: Fn(f64) -> f64,
{
    const Z_CAP: f64 = 650.0;
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }

    let h = |z: f64| lambda_prime(z) - x;
    let h0 = h(0.0);
    let (mut lo, mut hi);
    if h0 == 0.0 {
        return Ok(-lambda(0.0));
    } else if h0 < 0.0 {
        lo = 0.0;
        hi = 1.0;
        while h(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > Z_CAP {
                return Err(Error::Domain(format!(
                    "x = {x} is at or beyond the upper range of Λ'"
                )));
            }
        }
    } else {
        hi = 0.0;
        lo = -1.0;
        while h(lo) > 0.0 {
            hi = lo;
            lo *= 2.0;
            if lo < -Z_CAP {
                return Err(Error::Domain(format!(
                    "x = {x} is at or beyond the lower range of Λ'"
                )));
            }
        }
    }

    let mut z = 0.5 * (lo + hi);
    for _ in 0..300 {
        let hz = h(z);
        if hz > 0.0 {
            hi = z;
        } else {
            lo = z;
        }
        let slope = match lambda_second {
            Some(s) => s(z),
            None => {
                let dz = 1e-6 * (1.0 + z.abs());
                (lambda_prime(z + dz) - lambda_prime(z - dz)) / (2.0 * dz)
            }
        };
        let newton = z - hz / slope;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - z).abs() <= 1e-12 * (1.0 + z.abs()) || hi - lo <= 1e-12 * (1.0 + z.abs()) {
            z = next;
            break;
        }
        z = next;
    }
    Ok(x * z - lambda(z))
}

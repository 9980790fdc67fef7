use serde::Serialize;

use super::series::{require_series_regime, triple_series, SeriesAccumulator, DEFAULT_MAX_TERMS};
use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::specfun::{
    integrate, integrate_to_infinity, ln_1m_exp, ln_gamma, log_add_exp, QuadOptions,
};

/// `g_k = Γ(α+1) Γ(kβ+1) / Γ(α+kβ+1) = E[(1 - V)^(kβ)]` for `V ~ Beta(α, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GkValue {
    pub k: u32,
    pub g_k: f64,
}

pub fn g_k(p: &EglfrParams, k: u32) -> Result<GkValue> {
    let kb = k as f64 * p.beta;
    if !(kb + 1.0 > 0.0) {
        return Err(Error::MomentNonexistent {
            order: 2.0 * k as f64,
        });
    }
    let ln = ln_gamma(p.alpha + 1.0)? + ln_gamma(kb + 1.0)? - ln_gamma(p.alpha + kb + 1.0)?;
    Ok(GkValue { k, g_k: ln.exp() })
}

/// Whether `E[X^k]` is finite.
///
/// Bounded support (β > 0) and the β = 0 tails always give finite moments. For β < 0
/// the survival function decays like `x^(2/β)` when `b > 0` and like `x^(1/β)` when
/// `b = 0`, for every α.
pub fn moment_exists(p: &EglfrParams, k: f64) -> bool {
    if p.beta >= 0.0 || p.is_beta_zero() {
        return true;
    }
    let limit = if p.b > 0.0 {
        -2.0 / p.beta
    } else {
        -1.0 / p.beta
    };
    k < limit
}

/// Series form of `E[X^r]` for β > 0, b > 0.
pub fn moment_series(p: &EglfrParams, r: u32, tol: f64) -> Result<SeriesAccumulator> {
    require_series_regime(p)?;
    let psi = p.psi();
    let rf = r as f64;
    let scale = psi.powf(rf + 1.0);
    triple_series(
        p,
        |s| {
            let s = s as f64;
            scale * (p.a / (s + rf + 1.0) + p.b * psi / (s + rf + 2.0))
        },
        tol,
        DEFAULT_MAX_TERMS,
    )
}

/// `E[X^(2k)]` for `a = 0` from the `g_j`:
/// `(2/(bβ))^k Σ_j C(k, j) (-1)^j g_j`.
pub fn moment_closed_even(p: &EglfrParams, k: u32) -> Result<f64> {
    p.validate()?;
    if p.a != 0.0 {
        return Err(Error::Regime("the closed form needs a = 0".into()));
    }
    if p.is_beta_zero() {
        return Err(Error::Regime("the closed form needs beta != 0".into()));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let mut sum = 1.0;
    let mut binom = 1.0;
    for j in 1..=k {
        binom *= (k - j + 1) as f64 / j as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * g_k(p, j)?.g_k;
    }
    Ok((2.0 / (p.b * p.beta)).powi(k as i32) * sum)
}

/// `ln Q(u)` with `ln S₁ = ln(1 - u^(1/α))` given; stays finite where `Q` overflows.
pub(crate) fn ln_quantile(p: &EglfrParams, ln_s: f64) -> f64 {
    if !p.is_beta_zero() && p.beta < 0.0 {
        // z = (S^β - 1)/(-β) with S^β large
        let e = p.beta * ln_s;
        let ln_z = if e > 30.0 {
            e + ln_1m_exp(-e) - (-p.beta).ln()
        } else {
            (e.exp_m1() / -p.beta).ln()
        };
        if ln_z > 600.0 {
            // x = 2z / (sqrt(a² + 2bz) + a)
            let ln_root = if p.b > 0.0 {
                0.5 * log_add_exp(2.0 * p.a.ln(), std::f64::consts::LN_2 + p.b.ln() + ln_z)
            } else {
                p.a.ln()
            };
            let ln_den = log_add_exp(ln_root, p.a.ln());
            return std::f64::consts::LN_2 + ln_z - ln_den;
        }
    }
    p.quantile_from_ln_s1(ln_s).ln()
}

/// `E[X^r]` by quadrature of `∫₀^∞ Q(1 - e^(-t))^r e^(-t) dt`.
pub fn moment_numeric(p: &EglfrParams, r: f64, tol: f64) -> Result<f64> {
    p.validate()?;
    if !moment_exists(p, r) {
        return Err(Error::MomentNonexistent { order: r });
    }
    if r == 0.0 {
        return Ok(1.0);
    }
    let ln_alpha = p.alpha.ln();
    let integrand = |t: f64| -> f64 {
        // ln S₁ at u = 1 - e^(-t)
        let ln_s = if t > 700.0 {
            -t - ln_alpha
        } else {
            ln_1m_exp(ln_1m_exp(-t) / p.alpha)
        };
        let ln_x = ln_quantile(p, ln_s);
        (r * ln_x - t).exp()
    };
    let opts = QuadOptions::relative(tol);
    let head = integrate(integrand, 0.0, 1.0, &opts)?;
    let tail = integrate_to_infinity(integrand, 1.0, 2.0, &opts)?;
    Ok(head.value + tail.value)
}

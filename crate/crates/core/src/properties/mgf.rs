use super::moments::ln_quantile;
use super::series::{require_series_regime, triple_series, SeriesAccumulator, DEFAULT_MAX_TERMS};
use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::specfun::{integrate, integrate_to_infinity, ln_1m_exp, QuadOptions};

/// `∫₀¹ y^s e^(τy) dy = Σ_j τ^j / (j! (s + j + 1))`.
fn exp_power_integral(s: usize, tau: f64) -> f64 {
    let s = s as f64;
    let mut term = 1.0;
    let mut sum = 1.0 / (s + 1.0);
    for j in 1..10_000 {
        term *= tau / j as f64;
        let add = term / (s + j as f64 + 1.0);
        sum += add;
        if add.abs() <= f64::EPSILON * sum.abs() && j as f64 > tau.abs() {
            break;
        }
    }
    sum
}

/// Series form of `M(t) = E[e^(tX)]` for β > 0, b > 0.
pub fn mgf_series(p: &EglfrParams, t: f64, tol: f64) -> Result<SeriesAccumulator> {
    require_series_regime(p)?;
    if !t.is_finite() {
        return Err(Error::Domain(format!("t must be finite, got {t}")));
    }
    let psi = p.psi();
    let tau = t * psi;
    triple_series(
        p,
        |s| psi * (p.a * exp_power_integral(s, tau) + p.b * psi * exp_power_integral(s + 1, tau)),
        tol,
        DEFAULT_MAX_TERMS,
    )
}

/// The MGF series with each `∫₀^ψ x^s (a + bx) e^(tx) dx` taken from the closed form as
/// it appears in the literature:
///
/// `e^(tψ) s! Σ_{i=0}^{s} (-1)^i ψ^(s-i) [a + b(s+1)ψ/(s+1-i)] / (t^(i+1) (s-i)!) - (-1)^s (a - b/t) / t^(s+1)`.
///
/// That expression drops the `i = s+1` term of the `b`-integral and has the wrong
/// constant, so it disagrees with [`mgf_series`] whenever `b > 0`. Kept for comparison.
pub fn mgf_series_as_printed(p: &EglfrParams, t: f64, tol: f64) -> Result<SeriesAccumulator> {
    require_series_regime(p)?;
    if t == 0.0 || !t.is_finite() {
        return Err(Error::Domain("the printed form needs t != 0".into()));
    }
    let psi = p.psi();
    let (a, b) = (p.a, p.b);
    // the alternating form cancels catastrophically for large s; keep the series short
    let max_terms = 40;
    let closed = |s: usize| -> f64 {
        let sf = s as f64;
        let mut sum = 0.0;
        // s!/(s-i)! built up incrementally
        let mut falling = 1.0;
        for i in 0..=s {
            if i > 0 {
                falling *= (s - i + 1) as f64;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let bracket = a + b * (sf + 1.0) * psi / (sf + 1.0 - i as f64);
            sum += sign * falling * psi.powi((s - i) as i32) * bracket / t.powi(i as i32 + 1);
        }
        let sign_s = if s % 2 == 0 { 1.0 } else { -1.0 };
        let value = (t * psi).exp() * sum - sign_s * (a - b / t) / t.powi(s as i32 + 1);
        // the series engine expects the integral against y^s = (x/ψ)^s
        value / psi.powi(s as i32)
    };
    triple_series(p, closed, tol, max_terms)
}

/// `E[e^(tX)]` by quadrature over the probability scale.
pub fn mgf_numeric(p: &EglfrParams, t: f64, tol: f64) -> Result<f64> {
    p.validate()?;
    let bounded = p.psi().is_finite();
    if t <= 0.0 || bounded {
        let f = |u: f64| (t * p.quantile(u).unwrap_or(f64::NAN)).exp();
        return Ok(integrate(f, 0.0, 1.0, &QuadOptions::relative(tol))?.value);
    }
    let finite = if p.beta < 0.0 && !p.is_beta_zero() {
        false
    } else {
        p.b > 0.0 || t < p.a
    };
    if !finite {
        return Err(Error::Domain(format!(
            "the moment generating function diverges at t = {t}"
        )));
    }
    let ln_alpha = p.alpha.ln();
    let integrand = |s: f64| -> f64 {
        let ln_s = if s > 700.0 {
            -s - ln_alpha
        } else {
            ln_1m_exp(ln_1m_exp(-s) / p.alpha)
        };
        (t * ln_quantile(p, ln_s).exp() - s).exp()
    };
    let opts = QuadOptions::relative(tol);
    let head = integrate(integrand, 0.0, 1.0, &opts)?;
    let tail = integrate_to_infinity(integrand, 1.0, 2.0, &opts)?;
    Ok(head.value + tail.value)
}

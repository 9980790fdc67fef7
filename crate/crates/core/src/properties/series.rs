use serde::Serialize;

use crate::dist::EglfrParams;
use crate::error::{Error, Result};

/// Result of a truncated infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesAccumulator {
    pub tol: f64,
    pub max_outer_terms: usize,
    pub value: f64,
    /// Larger magnitude of the last two outer contributions.
    pub truncation_estimate: f64,
    /// `ε · max |term| · (number of terms)`.
    pub roundoff_estimate: f64,
    pub outer_terms: usize,
    pub converged: bool,
}

pub const DEFAULT_MAX_TERMS: usize = 500;

pub(crate) fn require_series_regime(p: &EglfrParams) -> Result<()> {
    p.validate()?;
    if !(p.beta > 0.0) || p.is_beta_zero() || !(p.b > 0.0) {
        return Err(Error::Regime(format!(
            "the series needs beta > 0 and b > 0, got beta = {}, b = {}",
            p.beta, p.b
        )));
    }
    Ok(())
}

/// Evaluates
///
/// `α Σ_n (-1)^n C(α-1, n) Σ_m (-1)^m C(c_n, m) Σ_k C(m, k) u^(m-k) v^k J(m + k)`
///
/// with `c_n = (n+1)/β - 1`, `u = β a ψ`, `v = β b ψ² / 2` (so `u + v = 1`), which is the
/// expansion of `∫₀^ψ h(x) f(x) dx` after writing `1 - βz = 1 - (u y + v y²)`, `y = x/ψ`.
/// `j(s)` must return `∫₀^ψ h(x) (a + bx) y^s dx`.
pub(crate) fn triple_series<J: Fn(usize) -> f64>(
    p: &EglfrParams,
    j: J,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesAccumulator> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "series tolerance must be positive, got {tol}"
        )));
    }
    let psi = p.psi();
    let u = p.beta * p.a * psi;
    let v = 0.5 * p.beta * p.b * psi * psi;
    let (ln_u, ln_v) = (u.ln(), v.ln());
    let js: Vec<f64> = (0..=2 * max_terms).map(&j).collect();
    let inner_tol = tol * 1e-2;

    // ln C(m, k) via a running table of ln m!
    let mut ln_fact = vec![0.0; max_terms + 1];
    for m in 1..=max_terms {
        ln_fact[m] = ln_fact[m - 1] + (m as f64).ln();
    }
    let mixed = |m: usize| -> f64 {
        let mut s = 0.0;
        for k in 0..=m {
            let w = if u == 0.0 {
                if k == m {
                    1.0
                } else {
                    continue;
                }
            } else if v == 0.0 {
                if k == 0 {
                    1.0
                } else {
                    break;
                }
            } else {
                (ln_fact[m] - ln_fact[k] - ln_fact[m - k] + (m - k) as f64 * ln_u + k as f64 * ln_v)
                    .exp()
            };
            s += w * js[m + k];
        }
        s
    };
    let mixed_cache: Vec<f64> = (0..max_terms).map(mixed).collect();

    let mut total = 0.0;
    let mut max_term: f64 = 0.0;
    let mut count = 0usize;
    let mut coef_n = 1.0;
    let mut small_run = 0;
    let mut last_two = [f64::INFINITY; 2];
    let mut converged = false;
    let mut inner_ok = true;
    let mut outer_terms = 0;
    for n in 0..max_terms {
        if n > 0 {
            coef_n *= (n as f64 - p.alpha) / n as f64;
        }
        outer_terms = n + 1;
        let contribution = if coef_n == 0.0 {
            0.0
        } else {
            let c = (n as f64 + 1.0) / p.beta - 1.0;
            let mut coef_m = 1.0;
            let mut inner = 0.0;
            let mut inner_small = 0;
            let mut inner_done = false;
            for m in 0..max_terms {
                if m > 0 {
                    coef_m *= (m as f64 - 1.0 - c) / m as f64;
                }
                if coef_m == 0.0 {
                    inner_done = true;
                    break;
                }
                let term = coef_m * mixed_cache[m];
                inner += term;
                max_term = max_term.max((p.alpha * coef_n * term).abs());
                count += 1;
                if term.abs() < inner_tol {
                    inner_small += 1;
                    if inner_small >= 2 {
                        inner_done = true;
                        break;
                    }
                } else {
                    inner_small = 0;
                }
            }
            inner_ok &= inner_done;
            p.alpha * coef_n * inner
        };
        total += contribution;
        last_two = [last_two[1], contribution.abs()];
        if contribution.abs() < tol {
            small_run += 1;
            if small_run >= 2 {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    let truncation_estimate = last_two[0].max(last_two[1]);
    Ok(SeriesAccumulator {
        tol,
        max_outer_terms: max_terms,
        value: total,
        truncation_estimate,
        roundoff_estimate: f64::EPSILON * max_term * count.max(1) as f64,
        outer_terms,
        converged: converged && inner_ok,
    })
}

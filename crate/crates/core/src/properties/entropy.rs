use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::specfun::{integrate, integrate_to_infinity, ln_1m_exp, QuadOptions};

/// `ln f₁(Q₁(v))` for the α = 1 baseline, given `ln v`.
fn ln_f1_at(p: &EglfrParams, ln_v: f64) -> f64 {
    let base = p.with_alpha(1.0);
    let ln_s = ln_1m_exp(ln_v);
    let x = base.quantile_from_ln_s1(ln_s);
    p.b.mul_add(x, p.a).ln() + (1.0 - if p.is_beta_zero() { 0.0 } else { p.beta }) * ln_s
}

/// `∫₀¹ g(ln u) du`, split at 1/2 with `u = v²` near 0 and `1 - u = v²` near 1 so that
/// `ln u` stays accurate at both ends.
fn unit_integral<F: Fn(f64) -> f64>(g: F, tol: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 0.0,
        ..QuadOptions::default()
    };
    let edge = 0.5f64.sqrt();
    let lower = integrate(
        |v| {
            if v == 0.0 {
                0.0
            } else {
                2.0 * v * g(2.0 * v.ln())
            }
        },
        0.0,
        edge,
        &opts,
    )?;
    let upper = integrate(
        |v| {
            let w = v * v;
            if w == 0.0 {
                0.0
            } else {
                2.0 * v * g((-w).ln_1p())
            }
        },
        0.0,
        edge,
        &opts,
    )?;
    Ok(lower.value + upper.value)
}

/// Shannon entropy `-ln α + (α-1)/α - E[ln f₁(Q₁(W))]`, `W ~ Beta(α, 1)`.
pub fn shannon_entropy(p: &EglfrParams, tol: f64) -> Result<f64> {
    p.validate()?;
    let inv_alpha = 1.0 / p.alpha;
    let e = unit_integral(|ln_u| ln_f1_at(p, ln_u * inv_alpha), tol * 1e-2)?;
    Ok(-p.alpha.ln() + (p.alpha - 1.0) / p.alpha - e)
}

/// Rényi entropy of order ρ through `T ~ Beta(c, 1)`, `c = ρ(α-1) + 1`:
/// `(ρ ln α - ln c + ln E[f₁(Q₁(T))^(ρ-1)]) / (1 - ρ)`.
pub fn renyi_entropy(p: &EglfrParams, rho: f64, tol: f64) -> Result<f64> {
    p.validate()?;
    if !(rho > 0.0) || rho == 1.0 {
        return Err(Error::Domain(format!(
            "Renyi order must be positive and != 1, got {rho}"
        )));
    }
    let c = rho * (p.alpha - 1.0) + 1.0;
    if !(c > 0.0) {
        return Err(Error::Domain(format!(
            "rho (alpha - 1) + 1 must be positive, got {c}"
        )));
    }
    let inv_c = 1.0 / c;
    let e = unit_integral(
        |ln_u| ((rho - 1.0) * ln_f1_at(p, ln_u * inv_c)).exp(),
        tol * 1e-2,
    )?;
    if !(e > 0.0 && e.is_finite()) {
        return Err(Error::Domain("the Renyi integral is not finite".into()));
    }
    Ok((rho * p.alpha.ln() - c.ln() + e.ln()) / (1.0 - rho))
}

fn over_support<F: Fn(f64) -> f64>(p: &EglfrParams, f: F, tol: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 0.0,
        ..QuadOptions::default()
    };
    let psi = p.psi();
    let median = p.quantile(0.5)?;
    let head = integrate(&f, 0.0, median, &opts)?.value;
    let tail = if psi.is_finite() {
        integrate(&f, median, psi, &opts)?.value
    } else {
        integrate_to_infinity(&f, median, median.max(1e-3), &opts)?.value
    };
    Ok(head + tail)
}

/// `-∫ f ln f dx` over the support.
pub fn shannon_entropy_direct(p: &EglfrParams, tol: f64) -> Result<f64> {
    p.validate()?;
    over_support(
        p,
        |x| {
            let l = p.ln_pdf(x);
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                -l.exp() * l
            }
        },
        tol * 1e-2,
    )
}

/// `ln(∫ f^ρ dx) / (1 - ρ)` over the support.
pub fn renyi_entropy_direct(p: &EglfrParams, rho: f64, tol: f64) -> Result<f64> {
    p.validate()?;
    if !(rho > 0.0) || rho == 1.0 {
        return Err(Error::Domain(format!(
            "Renyi order must be positive and != 1, got {rho}"
        )));
    }
    let i = over_support(p, |x| (rho * p.ln_pdf(x)).exp(), tol * 1e-2)?;
    Ok(i.ln() / (1.0 - rho))
}

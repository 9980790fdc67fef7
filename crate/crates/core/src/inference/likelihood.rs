use crate::data::Dataset;
use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::specfun::ln_1m_exp;

/// Log-likelihood of an EGLFR sample; `-∞` if any observation lies at or beyond ψ.
pub fn log_likelihood(p: &EglfrParams, data: &Dataset) -> f64 {
    log_likelihood_values(p, data.values())
}

pub(crate) fn log_likelihood_values(p: &EglfrParams, xs: &[f64]) -> f64 {
    match sums(p.beta, p.a, p.b, xs, 1.0) {
        Some(s) => s.log_lik(p.alpha),
        None => f64::NEG_INFINITY,
    }
}

/// Sufficient sums of the likelihood at fixed (β, a, b).
#[derive(Debug, Clone, Copy)]
pub(crate) struct LikSums {
    pub n: f64,
    pub ln_slope: f64,
    /// `(1/β - 1) Σ ln(1 - βz)`, or `-Σ z` when β = 0.
    pub body: f64,
    pub ln_d: f64,
}

impl LikSums {
    pub fn log_lik(&self, alpha: f64) -> f64 {
        self.n * alpha.ln() + self.ln_slope + self.body + (alpha - 1.0) * self.ln_d
    }

    /// Closed-form maximizer of [`LikSums::log_lik`] in α.
    pub fn alpha_hat(&self) -> f64 {
        -self.n / self.ln_d
    }
}

/// Accumulates [`LikSums`]; `None` when some `β z_i ≥ w_max` (outside the support, or
/// beyond the optimizer barrier when `w_max < 1`).
pub(crate) fn sums(beta: f64, a: f64, b: f64, xs: &[f64], w_max: f64) -> Option<LikSums> {
    sums_pinned(beta, a, b, xs, w_max, None)
}

/// [`sums`] with `ln(1 - βz)` at the observations equal to `pin.0` taken as `pin.1`.
///
/// Near the barrier `1 - βz` carries a relative rounding error of order `1e-4`; pinning
/// the known value keeps the objective smooth there.
pub(crate) fn sums_pinned(
    beta: f64,
    a: f64,
    b: f64,
    xs: &[f64],
    w_max: f64,
    pin: Option<(f64, f64)>,
) -> Option<LikSums> {
    let q = EglfrParams {
        alpha: 1.0,
        beta,
        a,
        b,
    };
    let zero = q.is_beta_zero();
    let mut out = LikSums {
        n: xs.len() as f64,
        ln_slope: 0.0,
        body: 0.0,
        ln_d: 0.0,
    };
    for &x in xs {
        let z = q.z(x);
        out.ln_slope += b.mul_add(x, a).ln();
        let ln_s = if zero {
            out.body -= z;
            -z
        } else {
            let ln_w = match pin {
                Some((x_pin, ln_w)) if x == x_pin => ln_w,
                _ => {
                    if beta * z >= w_max {
                        return None;
                    }
                    (-beta * z).ln_1p()
                }
            };
            out.body += (1.0 / beta - 1.0) * ln_w;
            ln_w / beta
        };
        out.ln_d += if ln_s == 0.0 { z.ln() } else { ln_1m_exp(ln_s) };
    }
    if out.ln_slope.is_nan() || out.ln_d.is_nan() || !out.ln_d.is_finite() {
        return None;
    }
    Some(out)
}

/// Closed-form MLE of α at fixed (β, a, b).
pub fn profile_alpha(beta: f64, a: f64, b: f64, data: &Dataset) -> Result<f64> {
    let s = sums(beta, a, b, data.values(), 1.0).ok_or_else(|| {
        Error::Infeasible(format!(
            "(beta, a, b) = ({beta}, {a}, {b}) puts data outside the support"
        ))
    })?;
    let alpha = s.alpha_hat();
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Infeasible(format!(
            "profile alpha is not finite at ({beta}, {a}, {b})"
        )));
    }
    Ok(alpha)
}

/// Score vector `(∂/∂α, ∂/∂β, ∂/∂a, ∂/∂b)` of the log-likelihood for β ≠ 0.
pub fn score(p: &EglfrParams, data: &Dataset) -> Result<[f64; 4]> {
    if p.is_beta_zero() {
        return Err(Error::Domain(
            "the score is defined for beta != 0 only".into(),
        ));
    }
    let EglfrParams { alpha, beta, a, b } = *p;
    let n = data.len() as f64;
    let mut u = [n / alpha, 0.0, 0.0, 0.0];
    for &x in data.values() {
        let z = p.z(x);
        if beta * z >= 1.0 {
            return Err(Error::Domain(format!(
                "observation {x} lies outside the support"
            )));
        }
        let w = 1.0 - beta * z;
        let ln_w = (-beta * z).ln_1p();
        let ln_s = ln_w / beta;
        let ln_d = ln_1m_exp(ln_s);
        let slope = b.mul_add(x, a);
        // w^(1/β - 1) / D
        let ratio = (ln_s - ln_w - ln_d).exp();
        u[0] += ln_d;
        // ∂ w^(1/β)/∂β = -w^(1/β) (ln w / β² + z / (β w))
        let ds_dbeta = (ln_s - ln_d).exp() * (ln_w / (beta * beta) + z / (beta * w));
        u[1] += -ln_w / (beta * beta) - (1.0 / beta - 1.0) * z / w + (alpha - 1.0) * ds_dbeta;
        u[2] += 1.0 / slope - (1.0 - beta) * x / w + (alpha - 1.0) * x * ratio;
        u[3] += x / slope - (1.0 - beta) * 0.5 * x * x / w + (alpha - 1.0) * 0.5 * x * x * ratio;
    }
    Ok(u)
}

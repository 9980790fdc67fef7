use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::specfun::{integrate, QuadOptions};

/// `U(t) = -ln(1 - (1 - βz(t))^(1/β))`.
pub fn u_transform(p: &EglfrParams, t: f64) -> f64 {
    -p.ln_d(t)
}

/// `δ⁽ⁿ⁾(t) = E[Uⁿ(X) | X < t]` by quadrature over (0, t).
pub fn characterization_delta(p: &EglfrParams, t: f64, n: u32, tol: f64) -> Result<f64> {
    p.validate()?;
    if !(t > 0.0 && t < p.psi()) {
        return Err(Error::Domain(format!(
            "t = {t} is outside the open support"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let ln_ft = p.ln_cdf(t);
    let f = |x: f64| {
        let u = -p.ln_d(x);
        u.powi(n as i32) * (p.ln_pdf(x) - ln_ft).exp()
    };
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 0.0,
        ..QuadOptions::default()
    };
    // u = v² at the origin, where U and f may both be singular
    let mid = 0.5 * t;
    let lower = integrate(|v| 2.0 * v * f(v * v), 0.0, mid.sqrt(), &opts)?;
    let upper = integrate(f, mid, t, &opts)?;
    Ok(lower.value + upper.value)
}

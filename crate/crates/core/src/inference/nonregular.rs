use rayon::prelude::*;

use super::fit::{FitResult, Regime, RestartTrace};
use super::optim::{nelder_mead, OptimizerConfig};
use crate::competitors::ModelId;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::specfun::ln_1m_exp;

/// Modified log-likelihood on the observations below `psi`, with α profiled.
///
/// Returns `(ℓ, α̃)`; `None` when the point is infeasible.
pub(crate) fn modified_log_likelihood(a: f64, b: f64, psi: f64, xs: &[f64]) -> Option<(f64, f64)> {
    let g = a * psi + 0.5 * b * psi * psi;
    if !(g > 0.0 && g.is_finite()) {
        return None;
    }
    let n = xs.len() as f64;
    let (mut ln_slope, mut ln_w, mut ln_d) = (0.0, 0.0, 0.0);
    for &x in xs {
        let t = (a * x + 0.5 * b * x * x) / g;
        if !(t < 1.0) {
            return None;
        }
        let l1 = (-t).ln_1p();
        ln_slope += b.mul_add(x, a).ln();
        ln_w += l1;
        ln_d += ln_1m_exp(g * l1);
    }
    let alpha = -n / ln_d;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return None;
    }
    let ll = n * alpha.ln() + ln_slope + (g - 1.0) * ln_w + (alpha - 1.0) * ln_d;
    ll.is_finite().then_some((ll, alpha))
}

/// Non-regular fit for β > 0: ψ̃ = sample maximum, then the modified likelihood on the
/// observations strictly below ψ̃ is maximized over `(a, b)` with α profiled.
pub fn fit_nonregular(data: &Dataset, cfg: &OptimizerConfig) -> Result<FitResult> {
    fit_nonregular_model(ModelId::Eglfr, data, cfg)
}

/// [`fit_nonregular`] for EGLFR, EGE (`b = 0`) or EGR (`a = 0`).
pub fn fit_nonregular_model(
    id: ModelId,
    data: &Dataset,
    cfg: &OptimizerConfig,
) -> Result<FitResult> {
    cfg.validate()?;
    let (use_a, use_b) = match id {
        ModelId::Eglfr => (true, true),
        ModelId::Ege => (true, false),
        ModelId::Egr => (false, true),
        _ => return Err(Error::Regime(format!("{id} has no threshold parameter"))),
    };
    if data.len() < 3 {
        return Err(Error::DegenerateData(format!(
            "need at least 3 observations, got {}",
            data.len()
        )));
    }
    let psi = data.max();
    let xs: Vec<f64> = data.values().iter().copied().filter(|&x| x < psi).collect();
    if xs.len() < 2 {
        return Err(Error::DegenerateData(
            "fewer than two observations lie strictly below the sample maximum".into(),
        ));
    }
    let unpack = |q: &[f64]| -> (f64, f64) {
        match (use_a, use_b) {
            (true, true) => (q[0].exp(), q[1].exp()),
            (true, false) => (q[0].exp(), 0.0),
            _ => (0.0, q[0].exp()),
        }
    };
    let objective = |q: &[f64]| -> f64 {
        if q.iter().any(|v| !(-80.0..=30.0).contains(v)) {
            return f64::INFINITY;
        }
        let (a, b) = unpack(q);
        modified_log_likelihood(a, b, psi, &xs).map_or(f64::INFINITY, |(ll, _)| -ll)
    };
    let mut starts = Vec::new();
    for g in [0.5, 1.0, 2.0] {
        let fracs: &[f64] = if use_a && use_b {
            &[0.1, 0.5, 0.9]
        } else {
            &[1.0]
        };
        for &f in fracs {
            let q = match (use_a, use_b) {
                (true, true) => vec![(f * g / psi).ln(), (2.0 * (1.0 - f) * g / (psi * psi)).ln()],
                (true, false) => vec![(g / psi).ln()],
                _ => vec![(2.0 * g / (psi * psi)).ln()],
            };
            starts.push(q);
        }
    }
    let dim = starts[0].len();
    let runs: Vec<_> = starts
        .par_iter()
        .map(|q0| {
            nelder_mead(
                &objective,
                q0,
                &vec![0.5; dim],
                cfg.tol_f,
                cfg.tol_x,
                cfg.max_iters,
            )
        })
        .collect();
    let best = runs
        .iter()
        .filter(|m| m.f.is_finite())
        .min_by(|x, y| x.f.total_cmp(&y.f))
        .ok_or_else(|| Error::Infeasible("no start reached a finite modified likelihood".into()))?;
    let (a, b) = unpack(&best.x);
    let (ll, alpha) = modified_log_likelihood(a, b, psi, &xs).expect("finite at the optimum");
    let beta = 1.0 / (a * psi + 0.5 * b * psi * psi);
    let spec = id.spec();
    let params = match id {
        ModelId::Eglfr => vec![alpha, beta, a, b],
        ModelId::Ege => vec![alpha, beta, a],
        _ => vec![alpha, beta, b],
    };
    let converged = runs
        .iter()
        .any(|m| m.converged && (m.f - best.f).abs() <= 1e-6 * (1.0 + best.f.abs()));
    Ok(FitResult {
        model_id: id,
        param_names: spec.param_names.iter().map(|s| s.to_string()).collect(),
        fixed: vec![false; spec.k],
        params,
        log_lik: ll,
        n: xs.len(),
        std_errors: None,
        regime: Regime::NonRegular,
        converged,
        n_restarts_used: runs.len(),
        threshold_estimate: Some(psi),
        restarts: runs
            .iter()
            .map(|m| RestartTrace {
                initial_log_lik: -m.initial_f,
                final_log_lik: -m.f,
                iterations: m.iterations,
                converged: m.converged,
            })
            .collect(),
    })
}

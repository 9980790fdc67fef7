use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::likelihood::{log_likelihood_values, sums_pinned};
use super::optim::{nelder_mead, InitStrategy, Minimum, OptimizerConfig};
use crate::competitors::{log_likelihood_unchecked, Domain, ModelId};
use crate::data::Dataset;
use crate::dist::{EglfrParams, BETA_ZERO_CUTOFF};
use crate::error::{Error, Result};

const BARRIER: f64 = 1.0 - 1e-12;
const BETA_SEEDS: [f64; 5] = [-1.0, -0.1, 0.1, 1.0, 3.0];
const LN_BOX: (f64, f64) = (-80.0, 30.0);
const BETA_BOX: f64 = 100.0;
const GENERIC_BOX: f64 = 30.0;
const TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Regular,
    NonRegular,
}

/// Diagnostics of one optimizer start.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartTrace {
    pub initial_log_lik: f64,
    pub final_log_lik: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model_id: ModelId,
    pub param_names: Vec<String>,
    pub params: Vec<f64>,
    /// Parameters held fixed during the fit (no standard error).
    pub fixed: Vec<bool>,
    pub log_lik: f64,
    /// Number of observations entering `log_lik`.
    pub n: usize,
    pub std_errors: Option<Vec<Option<f64>>>,
    pub regime: Regime,
    pub converged: bool,
    pub n_restarts_used: usize,
    pub threshold_estimate: Option<f64>,
    pub restarts: Vec<RestartTrace>,
}

impl FitResult {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.param_names
            .iter()
            .position(|p| p == name)
            .map(|i| self.params[i])
    }

    /// Number of estimated parameters.
    pub fn k(&self) -> usize {
        self.fixed.iter().filter(|f| !**f).count()
    }

    pub fn eglfr_params(&self) -> Result<EglfrParams> {
        self.model_id.eglfr_params(&self.params)
    }
}

/// Which EGLFR coordinates are estimated; the others are fixed at zero (or at `alpha`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyMask {
    pub beta: bool,
    pub a: bool,
    pub b: bool,
    /// Fixed α instead of the profile value.
    pub alpha: Option<f64>,
}

impl FamilyMask {
    pub fn for_model(id: ModelId) -> Option<Self> {
        let (beta, a, b) = match id {
            ModelId::Eglfr => (true, true, true),
            ModelId::Ege => (true, true, false),
            ModelId::Egr => (true, false, true),
            ModelId::Glfr => (false, true, true),
            ModelId::Ge => (false, true, false),
            ModelId::Gr => (false, false, true),
            _ => return None,
        };
        Some(Self {
            beta,
            a,
            b,
            alpha: None,
        })
    }

    pub fn model_id(&self) -> Result<ModelId> {
        Ok(match (self.beta, self.a, self.b) {
            (true, true, true) => ModelId::Eglfr,
            (true, true, false) => ModelId::Ege,
            (true, false, true) => ModelId::Egr,
            (false, true, true) => ModelId::Glfr,
            (false, true, false) => ModelId::Ge,
            (false, false, true) => ModelId::Gr,
            _ => {
                return Err(Error::InvalidParams(
                    "at least one of a, b must be estimated".into(),
                ))
            }
        })
    }

    fn dim(&self) -> usize {
        self.beta as usize + self.a as usize + self.b as usize
    }

    fn unpack(&self, q: &[f64]) -> (f64, f64, f64) {
        let mut it = q.iter().copied();
        let beta = if self.beta { it.next().unwrap() } else { 0.0 };
        let a = if self.a {
            it.next().unwrap().exp()
        } else {
            0.0
        };
        let b = if self.b {
            it.next().unwrap().exp()
        } else {
            0.0
        };
        (beta, a, b)
    }

    fn pack(&self, beta: f64, a: f64, b: f64) -> Vec<f64> {
        let mut q = Vec::with_capacity(3);
        if self.beta {
            q.push(beta);
        }
        if self.a {
            q.push(a.ln());
        }
        if self.b {
            q.push(b.ln());
        }
        q
    }

    fn in_box(&self, q: &[f64]) -> bool {
        let mut i = 0;
        if self.beta {
            if q[0].abs() > BETA_BOX {
                return false;
            }
            i = 1;
        }
        q[i..].iter().all(|v| (LN_BOX.0..=LN_BOX.1).contains(v))
    }

    /// Nested masks with one more coordinate fixed at zero.
    fn children(&self) -> Vec<FamilyMask> {
        let mut out = Vec::new();
        if self.beta {
            out.push(FamilyMask {
                beta: false,
                ..*self
            });
        }
        if self.a && self.b {
            out.push(FamilyMask { b: false, ..*self });
            out.push(FamilyMask { a: false, ..*self });
        }
        out
    }
}

/// Profile objective: maximum over α (or the fixed α) at `(β, a, b)`, with the barrier.
fn profile_value(mask: &FamilyMask, beta: f64, a: f64, b: f64, xs: &[f64]) -> f64 {
    profile_value_pinned(mask, beta, a, b, xs, None)
}

fn profile_value_pinned(
    mask: &FamilyMask,
    beta: f64,
    a: f64,
    b: f64,
    xs: &[f64],
    pin: Option<(f64, f64)>,
) -> f64 {
    let s = match sums_pinned(beta, a, b, xs, BARRIER, pin) {
        Some(s) => s,
        None => return f64::NEG_INFINITY,
    };
    let alpha = mask.alpha.unwrap_or_else(|| s.alpha_hat());
    if !(alpha > 0.0 && alpha.is_finite()) {
        return f64::NEG_INFINITY;
    }
    let v = s.log_lik(alpha);
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Scales `(a, b)` so that `β z_max ≤ 0.9` for a positive-β seed.
fn repair(beta: f64, a: f64, b: f64, x_max: f64) -> (f64, f64) {
    if beta <= 0.0 {
        return (a, b);
    }
    let z = a * x_max + 0.5 * b * x_max * x_max;
    if beta * z < 0.9 {
        return (a, b);
    }
    let c = 0.9 / (beta * z);
    (a * c, b * c)
}

/// Level of `β z_max` on which the surface search runs, just inside the barrier.
const SURFACE: f64 = BARRIER - 1e-15;

fn logistic(v: f64) -> f64 {
    1.0 / (1.0 + (-v).exp())
}

/// Maps surface coordinates `(β, logit share of the linear term)` to `(β, a, b)` with
/// `β z_max = SURFACE`.
fn surface_point(mask: &FamilyMask, q: &[f64], x_max: f64) -> (f64, f64, f64) {
    let beta = q[0];
    let t = SURFACE / beta;
    let share = match (mask.a, mask.b) {
        (true, true) => logistic(q[1]),
        (true, false) => 1.0,
        _ => 0.0,
    };
    (
        beta,
        share * t / x_max,
        2.0 * (1.0 - share) * t / (x_max * x_max),
    )
}

/// For β > 1 the likelihood increases towards the support boundary, so the constrained
/// maximum sits on the barrier. This searches that surface directly, starting from the
/// positive-β restart endpoints and a few fixed β values.
fn surface_runs(
    mask: &FamilyMask,
    points: &[(f64, f64, f64)],
    xs: &[f64],
    x_max: f64,
    cfg: &OptimizerConfig,
) -> Vec<(Minimum, (f64, f64, f64))> {
    let both = mask.a && mask.b;
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for &(beta, a, b) in points {
        if beta > 0.0 {
            let z = a * x_max + 0.5 * b * x_max * x_max;
            let share = (a * x_max / z).clamp(1e-12, 1.0 - 1e-12);
            let mut q = vec![beta];
            if both {
                q.push((share / (1.0 - share)).ln());
            }
            starts.push(q);
        }
    }
    for beta in [1.5, 3.0, 6.0, 12.0] {
        starts.push(if both { vec![beta, 0.0] } else { vec![beta] });
    }
    let ln_w_surface = (-SURFACE).ln_1p();
    let objective = |q: &[f64]| -> f64 {
        if !(q[0] > 0.0 && q[0] <= BETA_BOX) || q.get(1).is_some_and(|v| v.abs() > 40.0) {
            return f64::INFINITY;
        }
        let (beta, a, b) = surface_point(mask, q, x_max);
        -profile_value_pinned(mask, beta, a, b, xs, Some((x_max, ln_w_surface)))
    };
    let step: Vec<f64> = if both { vec![0.5, 1.0] } else { vec![0.5] };
    starts
        .par_iter()
        .map(|q0| {
            let m = nelder_mead(&objective, q0, &step, cfg.tol_f, cfg.tol_x, cfg.max_iters);
            let pt = surface_point(mask, &m.x, x_max);
            (m, pt)
        })
        .collect()
}

struct Candidate {
    theta: [f64; 4],
    log_lik: f64,
}

fn better(new: f64, new_norm: f64, old: f64, old_norm: f64) -> bool {
    if (new - old).abs() <= TIE {
        new_norm < old_norm
    } else {
        new > old
    }
}

fn norm(t: &[f64]) -> f64 {
    t.iter().map(|v| v * v).sum::<f64>().sqrt()
}

struct FamilyOutcome {
    best: Candidate,
    traces: Vec<RestartTrace>,
    converged: bool,
}

fn fit_family_inner(
    mask: &FamilyMask,
    data: &Dataset,
    cfg: &OptimizerConfig,
) -> Result<FamilyOutcome> {
    let xs = data.values();
    let x_max = data.max();
    let a0 = 1.0 / data.mean();
    let b0 = 1.0 / data.mean_sq();

    // sub-model optima, embedded both as exact candidates and as nudged seeds
    let mut embedded: Vec<[f64; 4]> = Vec::new();
    for child in mask.children() {
        let sub = fit_family_inner(&child, data, cfg)?;
        embedded.push(sub.best.theta);
    }

    let base_beta: Vec<f64> = if mask.beta {
        BETA_SEEDS.to_vec()
    } else {
        vec![0.0]
    };
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for &beta in &base_beta {
        let (a, b) = repair(
            beta,
            if mask.a { a0 } else { 0.0 },
            if mask.b { b0 } else { 0.0 },
            x_max,
        );
        starts.push(mask.pack(beta, a, b));
    }
    let deterministic = starts.len();
    let total = match cfg.init_strategy {
        InitStrategy::MomentSeeds => cfg.restarts.max(1),
        InitStrategy::SeedsOnly => cfg.restarts.clamp(1, deterministic),
    };
    starts.truncate(total);
    let mut stream = 0u64;
    while starts.len() < total {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        stream += 1;
        let base = &starts[starts.len() % deterministic];
        let (beta, a, b) = mask.unpack(base);
        let beta = if mask.beta {
            beta + rng.random_range(-1.5..1.5)
        } else {
            0.0
        };
        let a = a * rng.random_range(-1.5f64..1.5).exp();
        let b = b * rng.random_range(-1.5f64..1.5).exp();
        let (a, b) = repair(beta, a, b, x_max);
        starts.push(mask.pack(beta, a, b));
    }
    for theta in &embedded {
        let (beta, mut a, mut b) = (theta[1], theta[2], theta[3]);
        if mask.a && a == 0.0 {
            a = a0 * 1e-6;
        }
        if mask.b && b == 0.0 {
            b = b0 * 1e-6;
        }
        let beta = if mask.beta && beta == 0.0 { 1e-4 } else { beta };
        let (a, b) = repair(beta, a, b, x_max);
        starts.push(mask.pack(beta, a, b));
    }

    let objective = |q: &[f64]| -> f64 {
        if !mask.in_box(q) {
            return f64::INFINITY;
        }
        let (beta, a, b) = mask.unpack(q);
        -profile_value(mask, beta, a, b, xs)
    };
    let step: Vec<f64> = (0..mask.dim())
        .map(|i| if mask.beta && i == 0 { 0.25 } else { 0.5 })
        .collect();
    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|q0| nelder_mead(&objective, q0, &step, cfg.tol_f, cfg.tol_x, cfg.max_iters))
        .collect();

    let mut runs = runs;
    let mut points: Vec<(f64, f64, f64)> = runs.iter().map(|m| mask.unpack(&m.x)).collect();
    let interior = runs.len();
    if mask.beta {
        for (m, pt) in surface_runs(mask, &points, xs, x_max, cfg) {
            runs.push(m);
            points.push(pt);
        }
    }

    // surface candidates are scored with the same pinned boundary term as their search
    let to_theta = |beta: f64, a: f64, b: f64, on_surface: bool| -> Option<Candidate> {
        let beta = if beta.abs() < BETA_ZERO_CUTOFF {
            0.0
        } else {
            beta
        };
        let pin = on_surface.then(|| (x_max, (-SURFACE).ln_1p()));
        let s = sums_pinned(beta, a, b, xs, BARRIER, pin)?;
        let alpha = mask.alpha.unwrap_or_else(|| s.alpha_hat());
        let p = EglfrParams { alpha, beta, a, b };
        if p.validate().is_err() {
            return None;
        }
        let ll = if on_surface {
            s.log_lik(alpha)
        } else {
            log_likelihood_values(&p, xs)
        };
        ll.is_finite().then_some(Candidate {
            theta: [alpha, beta, a, b],
            log_lik: ll,
        })
    };

    let consider = |c: Candidate, best: &mut Option<Candidate>| {
        let replace = match best {
            None => true,
            Some(old) => better(c.log_lik, norm(&c.theta), old.log_lik, norm(&old.theta)),
        };
        if replace {
            *best = Some(c);
        }
    };
    let mut best: Option<Candidate> = None;
    let mut traces = Vec::with_capacity(runs.len());
    for (i, (m, &(beta, a, b))) in runs.iter().zip(&points).enumerate() {
        traces.push(RestartTrace {
            initial_log_lik: -m.initial_f,
            final_log_lik: -m.f,
            iterations: m.iterations,
            converged: m.converged,
        });
        if let Some(c) = to_theta(beta, a, b, i >= interior) {
            consider(c, &mut best);
        }
    }
    let from_runs = best
        .as_ref()
        .map(|b| b.log_lik)
        .unwrap_or(f64::NEG_INFINITY);
    for theta in embedded {
        if let Some(c) = to_theta(theta[1], theta[2], theta[3], false) {
            consider(c, &mut best);
        }
    }
    let best =
        best.ok_or_else(|| Error::Infeasible("no restart reached a finite likelihood".into()))?;
    // an exact sub-model optimum that beats every run is a boundary maximum of this family
    let converged = best.log_lik > from_runs + TIE
        || runs.iter().any(|m| {
            m.converged && (-m.f - best.log_lik).abs() <= 1e-6 * (1.0 + best.log_lik.abs())
        });
    Ok(FamilyOutcome {
        best,
        traces,
        converged,
    })
}

/// Profile-likelihood fit of an EGLFR sub-family described by `mask`.
pub fn fit_family(mask: FamilyMask, data: &Dataset, cfg: &OptimizerConfig) -> Result<FitResult> {
    cfg.validate()?;
    let id = mask.model_id()?;
    if let Some(alpha) = mask.alpha {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "fixed alpha must be positive, got {alpha}"
            )));
        }
    }
    let out = fit_family_inner(&mask, data, cfg)?;
    let [alpha, beta, a, b] = out.best.theta;
    let p = EglfrParams { alpha, beta, a, b };
    let spec = id.spec();
    let params = id.params_from_eglfr(&p)?;
    let mut fixed = vec![false; spec.k];
    fixed[0] = mask.alpha.is_some();
    let (regime, threshold) = if beta > 0.0 {
        (Regime::NonRegular, Some(p.psi()))
    } else {
        (Regime::Regular, None)
    };
    Ok(FitResult {
        model_id: id,
        param_names: spec.param_names.iter().map(|s| s.to_string()).collect(),
        params,
        fixed,
        log_lik: out.best.log_lik,
        n: data.len(),
        std_errors: None,
        regime,
        converged: out.converged,
        n_restarts_used: out.traces.len(),
        threshold_estimate: threshold,
        restarts: out.traces,
    })
}

/// EGLFR fit by the profile likelihood in α over (β, ln a, ln b).
pub fn fit_regular(data: &Dataset, cfg: &OptimizerConfig) -> Result<FitResult> {
    fit_family(
        FamilyMask::for_model(ModelId::Eglfr).expect("family model"),
        data,
        cfg,
    )
}

fn generic_seeds(id: ModelId, data: &Dataset, cfg: &OptimizerConfig) -> Result<Vec<Vec<f64>>> {
    if id == ModelId::Bmw {
        return Ok(vec![vec![1.0 / data.mean(), 0.01, 0.5, 0.5, 1.0]]);
    }
    let g = fit_family(
        FamilyMask::for_model(ModelId::Glfr).expect("family model"),
        data,
        cfg,
    )?;
    let ag = g.params[0];
    let a = g.params[1].max(1e-6 / data.mean());
    let b = g.params[2].max(1e-6 / data.mean_sq());
    Ok(match id {
        ModelId::Blfr | ModelId::Kglfr => vec![vec![ag, 1.0, a, b]],
        ModelId::Mcglfr => vec![vec![ag, 1.0, 1.0, a, b]],
        ModelId::Mglfr => vec![vec![ag, 2.0, a, b / 2.0], vec![ag, 1.5, a, b]],
        ModelId::Pglfr => vec![vec![ag, 0.5, a, b]],
        ModelId::Gglfr => vec![vec![ag, 0.0, a, b], vec![ag, -2.0, a, b]],
        ModelId::Gle => {
            // the support starts where a x + b x²/2 = β, so β must stay below z(x_min)
            let x0 = data.min();
            let z0 = a * x0 + 0.5 * b * x0 * x0;
            vec![
                vec![1.0, 0.5 * z0, a, b],
                vec![ag, 0.5 * z0, a, b],
                vec![ag, 0.9 * z0, a, b],
            ]
        }
        _ => unreachable!("family models are fitted by the profile likelihood"),
    })
}

fn fit_generic(id: ModelId, data: &Dataset, cfg: &OptimizerConfig) -> Result<FitResult> {
    let spec = id.spec();
    let xs = data.values();
    let domains: &[Domain] = spec.param_domain;
    let to_q = |theta: &[f64]| -> Vec<f64> {
        theta
            .iter()
            .zip(domains)
            .map(|(v, d)| d.to_unconstrained(*v))
            .collect()
    };
    let from_q = |q: &[f64]| -> Vec<f64> {
        q.iter()
            .zip(domains)
            .map(|(v, d)| d.from_unconstrained(*v))
            .collect()
    };
    let objective = |q: &[f64]| -> f64 {
        if q.iter().any(|v| !(v.abs() <= GENERIC_BOX)) {
            return f64::INFINITY;
        }
        let theta = from_q(q);
        if spec.check(&theta).is_err() {
            return f64::INFINITY;
        }
        -log_likelihood_unchecked(id, &theta, xs)
    };

    let seeds = generic_seeds(id, data, cfg)?;
    let mut starts: Vec<Vec<f64>> = seeds.iter().map(|s| to_q(s)).collect();
    let deterministic = starts.len();
    let total = match cfg.init_strategy {
        InitStrategy::MomentSeeds => cfg.restarts.max(deterministic),
        InitStrategy::SeedsOnly => deterministic,
    };
    let mut stream = 0u64;
    while starts.len() < total {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
        rng.set_stream(stream);
        stream += 1;
        let base = starts[starts.len() % deterministic].clone();
        starts.push(
            base.iter()
                .map(|v| v + rng.random_range(-1.5..1.5))
                .collect(),
        );
    }
    let step = vec![0.5; spec.k];
    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|q0| nelder_mead(&objective, q0, &step, cfg.tol_f, cfg.tol_x, cfg.max_iters))
        .collect();

    let mut best: Option<(Vec<f64>, f64, bool)> = None;
    let mut traces = Vec::with_capacity(runs.len());
    for m in &runs {
        traces.push(RestartTrace {
            initial_log_lik: -m.initial_f,
            final_log_lik: -m.f,
            iterations: m.iterations,
            converged: m.converged,
        });
        if !m.f.is_finite() {
            continue;
        }
        let theta = from_q(&m.x);
        let ll = -m.f;
        let replace = match &best {
            None => true,
            Some((t, l, _)) => better(ll, norm(&theta), *l, norm(t)),
        };
        if replace {
            best = Some((theta, ll, m.converged));
        }
    }
    let (params, log_lik, converged) = best
        .ok_or_else(|| Error::Infeasible(format!("no {id} restart reached a finite likelihood")))?;
    Ok(FitResult {
        model_id: id,
        param_names: spec.param_names.iter().map(|s| s.to_string()).collect(),
        fixed: vec![false; spec.k],
        params,
        log_lik,
        n: data.len(),
        std_errors: None,
        regime: Regime::Regular,
        converged,
        n_restarts_used: traces.len(),
        threshold_estimate: None,
        restarts: traces,
    })
}

/// Maximum-likelihood fit of any supported model.
///
/// EGLFR and its sub-models use the profile likelihood over both β signs and report the
/// best restart; the other models use a simplex search in unconstrained coordinates.
pub fn fit_model(id: ModelId, data: &Dataset, cfg: &OptimizerConfig) -> Result<FitResult> {
    cfg.validate()?;
    if data.len() < 2 || data.min() == data.max() {
        return Err(Error::DegenerateData(format!(
            "{} observations with {} distinct values cannot identify a model",
            data.len(),
            if data.min() == data.max() { 1 } else { 2 }
        )));
    }
    match FamilyMask::for_model(id) {
        Some(mask) => fit_family(mask, data, cfg),
        None => fit_generic(id, data, cfg),
    }
}

use std::fmt::Write as _;
use std::io::Read;

use eglfr::competitors::{model_cdf, model_log_pdf};
use eglfr::data::DataSource;
use eglfr::gof::{information_criteria, ks_test};
use eglfr::inference::{
    fit_model, fit_nonregular_model, std_errors, FitResult, OptimizerConfig, Regime,
};
use eglfr::mc::{rate_exponent, run_threshold_experiment, McExperiment, RATE_SIZES};
use eglfr::properties::{moment_closed_even, moment_exists, moment_numeric};
use eglfr::report::compare as compare_models;
use eglfr::{Dataset, EglfrParams, ModelId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::args::{
    CompareArgs, CurvesArgs, FitArgs, FitMethod, McArgs, MomentsArgs, OptimizerArgs, ParamArgs,
    SampleArgs,
};
use crate::{Failure, Output, SCHEMA};

fn load_data(spec: &str) -> Result<Dataset, Failure> {
    if spec == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Data(format!("cannot read standard input: {e}")))?;
        return Ok(Dataset::parse("stdin", &text, DataSource::Inline)?);
    }
    Ok(Dataset::load(spec)?)
}

fn optimizer_config(a: &OptimizerArgs) -> Result<OptimizerConfig, Failure> {
    let cfg = OptimizerConfig {
        tol_f: a.tol,
        restarts: a.restarts,
        seed: a.seed,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn params(p: &ParamArgs) -> Result<EglfrParams, Failure> {
    Ok(EglfrParams::new(p.alpha, p.beta, p.a, p.b)?)
}

fn dataset_json(d: &Dataset) -> Value {
    json!({ "name": d.name, "n": d.len(), "digest": d.digest() })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn fmt_params(p: &EglfrParams) -> String {
    format!("alpha={} beta={} a={} b={}", p.alpha, p.beta, p.a, p.b)
}

fn named(fit: &FitResult, values: impl Iterator<Item = Value>) -> Map<String, Value> {
    fit.param_names.iter().cloned().zip(values).collect()
}

pub fn fit(a: &FitArgs) -> Result<Output, Failure> {
    let cfg = optimizer_config(&a.opt)?;
    let data = load_data(&a.data)?;
    let fit = match a.method {
        FitMethod::Profile => fit_model(a.model, &data, &cfg)?,
        FitMethod::Nonregular => fit_nonregular_model(a.model, &data, &cfg)?,
    };
    let nll = -fit.log_lik;
    let k = fit.k();
    let crit = information_criteria(nll, k, data.len()).ok();
    let id = fit.model_id;
    let ks = ks_test(|x| model_cdf(id, &fit.params, x).unwrap_or(f64::NAN), &data);
    let ses = if fit.regime == Regime::Regular && fit.converged {
        std_errors(&fit, &data).ok()
    } else {
        None
    };
    let doc = json!({
        "schema": SCHEMA,
        "command": "fit",
        "seed": cfg.seed,
        "config": cfg,
        "dataset": dataset_json(&data),
        "model": id,
        "method": a.method.as_str(),
        "params": named(&fit, fit.params.iter().map(|v| json!(v))),
        "std_errors": ses.map(|s| named(&fit, s.into_iter().map(|v| json!(v)))),
        "neg_log_lik": nll,
        "n_likelihood": fit.n,
        "k": k,
        "criteria": crit,
        "ks": ks,
        "regime": fit.regime,
        "converged": fit.converged,
        "threshold_estimate": fit.threshold_estimate,
        "n_restarts_used": fit.n_restarts_used,
        "restarts": fit.restarts,
    });
    Ok(Output {
        text: pretty(&doc),
        converged: fit.converged,
    })
}

pub fn compare(a: &CompareArgs) -> Result<Output, Failure> {
    let models: Vec<ModelId> = if a.model.is_empty() {
        ModelId::ALL.to_vec()
    } else {
        a.model.clone()
    };
    if models.len() < 2 {
        return Err(Failure::Usage("compare needs at least two models".into()));
    }
    let cfg = optimizer_config(&a.opt)?;
    let data = load_data(&a.data)?;
    let report = compare_models(&models, &data, &cfg)?;
    let text = if a.json {
        pretty(&json!({
            "schema": SCHEMA,
            "command": "compare",
            "seed": cfg.seed,
            "config": cfg,
            "report": report,
        }))
    } else {
        let mut s = format!(
            "# eglfr-kit compare dataset={} n={} digest={}\n# seed={} restarts={} tol_f={:e} tol_x={:e} max_iters={}\n",
            report.dataset, report.n, report.digest, cfg.seed, cfg.restarts, cfg.tol_f, cfg.tol_x, cfg.max_iters
        );
        s.push_str(&report.to_table());
        s
    };
    Ok(Output {
        text,
        converged: report.all_converged(),
    })
}

enum Curve {
    Eglfr(EglfrParams),
    Fitted(ModelId, Vec<f64>),
}

impl Curve {
    fn ln_pdf(&self, x: f64) -> f64 {
        match self {
            Curve::Eglfr(p) => p.ln_pdf(x),
            Curve::Fitted(id, v) => model_log_pdf(*id, v, x).unwrap_or(f64::NAN),
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        match self {
            Curve::Eglfr(p) => p.cdf(x),
            Curve::Fitted(id, v) => model_cdf(*id, v, x).unwrap_or(f64::NAN),
        }
    }

    fn hazard(&self, x: f64) -> f64 {
        match self {
            Curve::Eglfr(p) => p.hazard(x),
            _ => self.ln_pdf(x).exp() / (1.0 - self.cdf(x)),
        }
    }
}

pub fn curves(a: &CurvesArgs) -> Result<Output, Failure> {
    if a.grid < 2 {
        return Err(Failure::Usage("the grid needs at least two points".into()));
    }
    let data = a.data.as_deref().map(load_data).transpose()?;
    let given = match (a.params.alpha, a.params.beta, a.params.a, a.params.b) {
        (Some(alpha), Some(beta), Some(pa), Some(pb)) => {
            Some(EglfrParams::new(alpha, beta, pa, pb)?)
        }
        _ => None,
    };
    let curve = match (given, &data) {
        (Some(p), _) => {
            eprintln!(
                "# eglfr-kit curves EGLFR {} grid={}",
                fmt_params(&p),
                a.grid
            );
            Curve::Eglfr(p)
        }
        (None, Some(d)) => {
            let cfg = optimizer_config(&a.opt)?;
            let fit = fit_model(a.model, d, &cfg)?;
            eprintln!(
                "# eglfr-kit curves model={} fitted to {} params={:?} seed={} restarts={} tol_f={:e} grid={}",
                a.model, d.name, fit.params, cfg.seed, cfg.restarts, cfg.tol_f, a.grid
            );
            if a.model.is_eglfr_family() {
                Curve::Eglfr(fit.eglfr_params()?)
            } else {
                Curve::Fitted(a.model, fit.params)
            }
        }
        (None, None) => {
            return Err(Failure::Usage(
                "curves needs either --alpha --beta --a --b or --data to fit".into(),
            ))
        }
    };
    let (lo, hi, midpoints) = match (&data, &curve) {
        (Some(d), _) => (d.min() * 0.5, d.max() * 1.05, false),
        (None, Curve::Eglfr(p)) => {
            let psi = p.psi();
            (
                0.0,
                if psi.is_finite() {
                    psi
                } else {
                    p.quantile(0.999)?
                },
                true,
            )
        }
        (None, Curve::Fitted(..)) => unreachable!("fitted curves always have data"),
    };
    let step = (hi - lo)
        / if midpoints {
            a.grid as f64
        } else {
            (a.grid - 1) as f64
        };
    let mut out = String::from("x,pdf,cdf,hazard,ecdf\n");
    for i in 0..a.grid {
        let x = if midpoints {
            lo + (i as f64 + 0.5) * step
        } else {
            lo + i as f64 * step
        };
        let ecdf = data
            .as_ref()
            .map_or(String::new(), |d| d.ecdf(x).to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            x,
            curve.ln_pdf(x).exp(),
            curve.cdf(x),
            curve.hazard(x),
            ecdf
        );
    }
    Ok(Output::ok(out))
}

pub fn sample(a: &SampleArgs) -> Result<Output, Failure> {
    let p = params(&a.params)?;
    eprintln!(
        "# eglfr-kit sample {} n={} seed={}",
        fmt_params(&p),
        a.n,
        a.seed
    );
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut out = String::with_capacity(a.n * 20);
    for x in p.sample(a.n, &mut rng) {
        let _ = writeln!(out, "{x}");
    }
    Ok(Output::ok(out))
}

pub fn moments(a: &MomentsArgs) -> Result<Output, Failure> {
    let p = params(&a.params)?;
    if a.max_k == 0 {
        return Err(Failure::Usage("--max-k must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for k in 1..=a.max_k {
        if !moment_exists(&p, k as f64) {
            rows.push((k, None, "nonexistent"));
            continue;
        }
        let closed = p.beta < 0.0 && p.a == 0.0 && !p.is_beta_zero() && k % 2 == 0;
        let (value, method) = if closed {
            (moment_closed_even(&p, k / 2)?, "closed-form")
        } else {
            (moment_numeric(&p, k as f64, a.tol)?, "quadrature")
        };
        rows.push((k, Some(value), method));
    }
    let text = if a.json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(k, v, m)| json!({ "k": k, "value": v, "method": m }))
            .collect();
        pretty(&json!({
            "schema": SCHEMA,
            "command": "moments",
            "params": p,
            "config": { "max_k": a.max_k, "tol": a.tol },
            "moments": list,
        }))
    } else {
        let mut s = format!(
            "# eglfr-kit moments {} max_k={} tol={:e}\n",
            fmt_params(&p),
            a.max_k,
            a.tol
        );
        let _ = writeln!(s, "{:>2}  {:>12}  method", "k", "E[X^k]");
        for (k, v, m) in &rows {
            let cell = v.map_or_else(|| "---".to_string(), |x| format!("{x:.3}"));
            let _ = writeln!(s, "{k:>2}  {cell:>12}  {m}");
        }
        s
    };
    Ok(Output::ok(text))
}

pub fn mc_threshold(a: &McArgs) -> Result<Output, Failure> {
    let p = params(&a.params)?;
    let exp = McExperiment::new(p, a.n, a.reps, a.seed)?;
    let report = run_threshold_experiment(&exp)?;
    let rate = rate_exponent(&p, &RATE_SIZES, a.reps, a.seed)?;
    let text = if a.json {
        pretty(&json!({
            "schema": SCHEMA,
            "command": "mc-threshold",
            "seed": a.seed,
            "config": { "params": p, "n": a.n, "reps": a.reps, "rate_sizes": RATE_SIZES },
            "psi": report.psi,
            "g_psi": report.g_psi,
            "ks_stat": report.ks_stat,
            "ks_pvalue": report.limit_cdf_ks_pvalue,
            "quantiles": report.quantiles,
            "median_abs_gap": report.median_abs_gap,
            "rate": rate,
            "scaled_gaps": report.scaled_gaps,
        }))
    } else {
        let mut s = format!(
            "# eglfr-kit mc-threshold {} n={} reps={} seed={}\n",
            fmt_params(&p),
            a.n,
            a.reps,
            a.seed
        );
        let _ = writeln!(s, "psi            {}", report.psi);
        let _ = writeln!(s, "G(psi)         {}", report.g_psi);
        let _ = writeln!(s, "K-S statistic  {:.6}", report.ks_stat);
        let _ = writeln!(s, "K-S p-value    {:.6}", report.limit_cdf_ks_pvalue);
        for q in &report.quantiles {
            let _ = writeln!(s, "q{:<4}          {:.6}", q.p, q.value);
        }
        let _ = writeln!(
            s,
            "rate exponent  {:.4} (expected {:.4})",
            rate.exponent, rate.expected
        );
        for pt in &rate.points {
            let _ = writeln!(s, "  n={:<5} median|gap|={:.6e}", pt.n, pt.median_abs_gap);
        }
        s
    };
    Ok(Output::ok(text))
}

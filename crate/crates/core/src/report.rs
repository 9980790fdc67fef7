//! Side-by-side fits of several models on one dataset.

use rayon::prelude::*;
use serde::Serialize;

use crate::competitors::{model_cdf, ModelId};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::gof::{information_criteria, ks_test, lrt, ModelScore};
use crate::inference::{fit_model, std_errors, FitResult, OptimizerConfig, Regime};

/// Degrees of freedom of the likelihood-ratio test of `id` against EGLFR, for the nested
/// models.
pub fn lrt_df_against_eglfr(id: ModelId) -> Option<u32> {
    match id {
        ModelId::Ege | ModelId::Egr | ModelId::Glfr => Some(1),
        ModelId::Ge | ModelId::Gr => Some(2),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub name: String,
    pub value: f64,
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub model_id: ModelId,
    pub score: Option<ModelScore>,
    pub estimates: Vec<Estimate>,
    pub regime: Option<Regime>,
    pub converged: bool,
    pub threshold_estimate: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub dataset: String,
    pub n: usize,
    pub digest: String,
    /// Sorted by AIC; failed fits follow in request order.
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn row(&self, id: ModelId) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.model_id == id)
    }

    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.error.is_none() && r.converged)
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let header = [
            "model",
            "k",
            "-logL",
            "K-S",
            "p(K-S)",
            "AIC",
            "AICC",
            "BIC",
            "LRT",
            "p(LRT)",
            "estimates",
        ];
        let fmt = |v: Option<f64>, prec: usize| {
            v.map_or_else(|| "-".to_string(), |x| format!("{x:.prec$}"))
        };
        let mut lines: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            let mut cells = vec![r.model_id.to_string()];
            match &r.score {
                Some(s) => {
                    cells.push(s.k.to_string());
                    cells.push(format!("{:.4}", s.neg_log_lik));
                    cells.push(format!("{:.4}", s.ks_stat));
                    cells.push(format!("{:.4}", s.ks_pvalue));
                    cells.push(format!("{:.4}", s.aic));
                    cells.push(format!("{:.4}", s.aicc));
                    cells.push(format!("{:.4}", s.bic));
                    cells.push(fmt(s.lrt_stat, 4));
                    cells.push(fmt(s.lrt_pvalue, 4));
                }
                None => cells.extend((0..9).map(|_| "-".to_string())),
            }
            let mut last = r
                .estimates
                .iter()
                .map(|e| format!("{}={:.6}", e.name, e.value))
                .collect::<Vec<_>>()
                .join(" ");
            if let Some(err) = &r.error {
                last = format!("error: {err}");
            } else if !r.converged {
                last.push_str(" (not converged)");
            }
            cells.push(last);
            lines.push(cells);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for l in &lines {
            let row: Vec<String> = l
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    if c + 1 == l.len() {
                        s.clone()
                    } else if c == 0 {
                        format!("{s:<w$}", w = widths[c])
                    } else {
                        format!("{s:>w$}", w = widths[c])
                    }
                })
                .collect();
            out.push_str(row.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

fn score_fit(fit: &FitResult, data: &Dataset) -> Result<ModelScore> {
    let neg_log_lik = -fit.log_lik;
    let k = fit.k();
    let crit = information_criteria(neg_log_lik, k, data.len())?;
    let id = fit.model_id;
    let ks = ks_test(|x| model_cdf(id, &fit.params, x).unwrap_or(f64::NAN), data);
    if !ks.stat.is_finite() {
        return Err(Error::Evaluation(format!(
            "{id} cdf is not finite at the data"
        )));
    }
    Ok(ModelScore {
        model_id: id,
        k,
        neg_log_lik,
        ks_stat: ks.stat,
        ks_pvalue: ks.pvalue,
        aic: crit.aic,
        aicc: crit.aicc,
        bic: crit.bic,
        lrt_stat: None,
        lrt_pvalue: None,
        lrt_df: None,
    })
}

fn row_from(id: ModelId, outcome: Result<FitResult>, data: &Dataset) -> ComparisonRow {
    let mut row = ComparisonRow {
        model_id: id,
        score: None,
        estimates: Vec::new(),
        regime: None,
        converged: false,
        threshold_estimate: None,
        error: None,
    };
    let fit = match outcome {
        Ok(f) => f,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let ses = if fit.regime == Regime::Regular && fit.converged {
        std_errors(&fit, data).ok()
    } else {
        None
    };
    row.estimates = fit
        .param_names
        .iter()
        .zip(&fit.params)
        .enumerate()
        .map(|(i, (name, &value))| Estimate {
            name: name.clone(),
            value,
            std_error: ses.as_ref().and_then(|s| s[i]),
        })
        .collect();
    row.regime = Some(fit.regime);
    row.converged = fit.converged;
    row.threshold_estimate = fit.threshold_estimate;
    match score_fit(&fit, data) {
        Ok(s) => row.score = Some(s),
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Fits every requested model, scores it, and adds likelihood-ratio tests against EGLFR
/// when EGLFR is among the models.
pub fn compare(
    models: &[ModelId],
    data: &Dataset,
    cfg: &OptimizerConfig,
) -> Result<ComparisonReport> {
    if models.len() < 2 {
        return Err(Error::Domain(
            "a comparison needs at least two models".into(),
        ));
    }
    for (i, m) in models.iter().enumerate() {
        if models[..i].contains(m) {
            return Err(Error::Domain(format!("model {m} is listed twice")));
        }
    }
    cfg.validate()?;
    let mut rows: Vec<ComparisonRow> = models
        .par_iter()
        .map(|&id| row_from(id, fit_model(id, data, cfg), data))
        .collect();

    let full = rows
        .iter()
        .find(|r| r.model_id == ModelId::Eglfr)
        .and_then(|r| r.score.as_ref().map(|s| s.neg_log_lik));
    if let Some(full) = full {
        for row in &mut rows {
            let Some(df) = lrt_df_against_eglfr(row.model_id) else {
                continue;
            };
            let Some(score) = row.score.as_mut() else {
                continue;
            };
            match lrt(score.neg_log_lik, full, df) {
                Ok(t) => {
                    score.lrt_stat = Some(t.stat);
                    score.lrt_pvalue = Some(t.pvalue);
                    score.lrt_df = Some(t.df);
                }
                Err(e) => row.error = Some(e.to_string()),
            }
        }
    }

    let aic = |r: &ComparisonRow| r.score.as_ref().map_or(f64::INFINITY, |s| s.aic);
    rows.sort_by(|x, y| aic(x).total_cmp(&aic(y)));
    Ok(ComparisonReport {
        dataset: data.name.clone(),
        n: data.len(),
        digest: data.digest(),
        rows,
    })
}

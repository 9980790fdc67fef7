//! Goodness of fit and model selection.

use serde::Serialize;

use crate::competitors::ModelId;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::specfun::{kolmogorov_sf, regularized_upper_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub stat: f64,
    pub pvalue: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformationCriteria {
    pub aic: f64,
    pub aicc: f64,
    pub bic: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LrtResult {
    pub stat: f64,
    pub pvalue: f64,
    pub df: u32,
}

/// One row of a model comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelScore {
    pub model_id: ModelId,
    pub k: usize,
    pub neg_log_lik: f64,
    pub ks_stat: f64,
    pub ks_pvalue: f64,
    pub aic: f64,
    pub aicc: f64,
    pub bic: f64,
    pub lrt_stat: Option<f64>,
    pub lrt_pvalue: Option<f64>,
    pub lrt_df: Option<u32>,
}

/// One-sample Kolmogorov-Smirnov test of `data` against `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(cdf: F, data: &Dataset) -> KsResult {
    ks_test_values(cdf, data.values())
}

/// [`ks_test`] on a sorted slice.
pub fn ks_test_values<F: Fn(f64) -> f64>(cdf: F, sorted: &[f64]) -> KsResult {
    let n = sorted.len();
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    KsResult {
        stat: d,
        pvalue: kolmogorov_sf(d, n),
    }
}

/// AIC, AICC and BIC from `-ln L`, `k` parameters and `n` observations.
pub fn information_criteria(neg_log_lik: f64, k: usize, n: usize) -> Result<InformationCriteria> {
    if n <= k + 1 {
        return Err(Error::Domain(format!(
            "AICC needs n > k + 1, got n = {n}, k = {k}"
        )));
    }
    let (kf, nf) = (k as f64, n as f64);
    let aic = 2.0 * kf + 2.0 * neg_log_lik;
    Ok(InformationCriteria {
        aic,
        aicc: aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0),
        bic: kf * nf.ln() + 2.0 * neg_log_lik,
    })
}

/// Likelihood-ratio test of a restricted model against the full model.
pub fn lrt(neg_ll_restricted: f64, neg_ll_full: f64, df: u32) -> Result<LrtResult> {
    if df == 0 {
        return Err(Error::Domain("LRT needs df >= 1".into()));
    }
    if neg_ll_restricted < neg_ll_full - 1e-9 {
        return Err(Error::NestingViolation {
            restricted: neg_ll_restricted,
            full: neg_ll_full,
        });
    }
    let stat = (2.0 * (neg_ll_restricted - neg_ll_full)).max(0.0);
    let pvalue = if stat == 0.0 {
        1.0
    } else {
        regularized_upper_gamma(df as f64 / 2.0, stat / 2.0)?
    };
    Ok(LrtResult { stat, pvalue, df })
}

//! Monte-Carlo check of the limit law of the threshold estimator `ψ̃ = max xᵢ`.
//!
//! With `G = 1/β` and `c = a + bψ`, `n^{1/G}(ψ̃ - ψ)` converges to `-(G/c) V^{1/G}`,
//! `V ~ Exp(α)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::gof::ks_test_values;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McExperiment {
    pub true_params: EglfrParams,
    pub n: usize,
    pub replications: usize,
    pub seed: u64,
}

impl McExperiment {
    pub fn new(true_params: EglfrParams, n: usize, replications: usize, seed: u64) -> Result<Self> {
        let e = Self {
            true_params,
            n,
            replications,
            seed,
        };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        self.true_params.validate()?;
        if !(self.true_params.beta > 0.0) || self.true_params.is_beta_zero() {
            return Err(Error::Domain(
                "the threshold experiment needs beta > 0".into(),
            ));
        }
        if self.n < 50 {
            return Err(Error::Domain(format!(
                "sample size must be at least 50, got {}",
                self.n
            )));
        }
        if self.replications < 200 {
            return Err(Error::Domain(format!(
                "replications must be at least 200, got {}",
                self.replications
            )));
        }
        Ok(())
    }

    /// `G(ψ) = 1/β`.
    pub fn g_psi(&self) -> f64 {
        1.0 / self.true_params.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapQuantile {
    pub p: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub experiment: McExperiment,
    pub psi: f64,
    pub g_psi: f64,
    /// `n^{1/G}(ψ̃ᵣ - ψ)` in replication order.
    pub scaled_gaps: Vec<f64>,
    pub ks_stat: f64,
    pub limit_cdf_ks_pvalue: f64,
    pub quantiles: Vec<GapQuantile>,
    /// Median of the unscaled `|ψ̃ᵣ - ψ|`.
    pub median_abs_gap: f64,
}

/// `P(gap ≤ y) = exp(-α (-y c / G)^G)` for `y ≤ 0`, and 1 above.
pub fn limit_cdf(p: &EglfrParams, y: f64) -> f64 {
    if y >= 0.0 {
        return 1.0;
    }
    let g = 1.0 / p.beta;
    let c = p.b.mul_add(p.psi(), p.a);
    (-p.alpha * (-y * c / g).powf(g)).exp()
}

fn empirical_quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let (lo, frac) = (h.floor() as usize, h - h.floor());
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

/// Unscaled gaps `ψ̃ᵣ - ψ`, one independent stream per replication.
fn raw_gaps(exp: &McExperiment) -> Vec<f64> {
    let p = exp.true_params;
    let psi = p.psi();
    (0..exp.replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(exp.seed);
            rng.set_stream(r as u64);
            let max = p
                .sample(exp.n, &mut rng)
                .into_iter()
                .fold(f64::NEG_INFINITY, f64::max);
            (max - psi).min(0.0)
        })
        .collect()
}

fn median_abs(gaps: &[f64]) -> f64 {
    let mut abs: Vec<f64> = gaps.iter().map(|g| g.abs()).collect();
    abs.sort_by(f64::total_cmp);
    empirical_quantile(&abs, 0.5)
}

pub fn run_threshold_experiment(exp: &McExperiment) -> Result<McReport> {
    exp.validate()?;
    let p = exp.true_params;
    let g = exp.g_psi();
    let scale = (exp.n as f64).powf(1.0 / g);
    let gaps = raw_gaps(exp);
    let scaled_gaps: Vec<f64> = gaps.iter().map(|d| d * scale).collect();
    let mut sorted = scaled_gaps.clone();
    sorted.sort_by(f64::total_cmp);
    let ks = ks_test_values(|y| limit_cdf(&p, y), &sorted);
    let quantiles = [0.05, 0.25, 0.5, 0.75, 0.95]
        .iter()
        .map(|&q| GapQuantile {
            p: q,
            value: empirical_quantile(&sorted, q),
        })
        .collect();
    Ok(McReport {
        experiment: *exp,
        psi: p.psi(),
        g_psi: g,
        scaled_gaps,
        ks_stat: ks.stat,
        limit_cdf_ks_pvalue: ks.pvalue,
        quantiles,
        median_abs_gap: median_abs(&gaps),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatePoint {
    pub n: usize,
    pub median_abs_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateEstimate {
    pub points: Vec<RatePoint>,
    /// Least-squares slope of `ln median|gap|` on `ln n`.
    pub exponent: f64,
    /// `-1/G(ψ)`.
    pub expected: f64,
}

/// Default sample sizes for [`rate_exponent`].
pub const RATE_SIZES: [usize; 5] = [250, 500, 1000, 2000, 4000];

/// Log-log regression of the median `|ψ̃ - ψ|` on `n`. Each size gets its own seed.
pub fn rate_exponent(
    p: &EglfrParams,
    sizes: &[usize],
    replications: usize,
    seed: u64,
) -> Result<RateEstimate> {
    if sizes.len() < 2 {
        return Err(Error::Domain("need at least two sample sizes".into()));
    }
    let mut points = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let exp = McExperiment::new(*p, n, replications, seed.wrapping_add(i as u64))?;
        points.push(RatePoint {
            n,
            median_abs_gap: median_abs(&raw_gaps(&exp)),
        });
    }
    let xs: Vec<f64> = points.iter().map(|q| (q.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|q| q.median_abs_gap.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(RateEstimate {
        points,
        exponent: sxy / sxx,
        expected: -p.beta,
    })
}

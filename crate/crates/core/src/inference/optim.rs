//! Nelder-Mead simplex minimization.

use serde::Serialize;

use crate::error::{Error, Result};

/// How restart points beyond the deterministic seeds are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitStrategy {
    /// Moment-based seeds, then seeded jitter around them.
    MomentSeeds,
    /// Moment-based seeds only; `restarts` is capped by the seed count.
    SeedsOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub tol_f: f64,
    pub tol_x: f64,
    pub max_iters: usize,
    pub restarts: usize,
    pub init_strategy: InitStrategy,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            tol_f: 1e-10,
            tol_x: 1e-8,
            max_iters: 5000,
            restarts: 8,
            init_strategy: InitStrategy::MomentSeeds,
            seed: 20_240_901,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_f > 0.0 && self.tol_x > 0.0) {
            return Err(Error::InvalidParams(
                "optimizer tolerances must be positive".into(),
            ));
        }
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParams(
                "restarts and max_iters must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one simplex run.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub initial_f: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0` with initial edge lengths `step`.
///
/// Non-finite objective values are treated as `+∞`. After convergence the simplex is
/// rebuilt around the best vertex and the search continues until a rebuild no longer
/// improves the minimum.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    step: &[f64],
    tol_f: f64,
    tol_x: f64,
    max_iters: usize,
) -> Minimum {
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let n = x0.len();
    let initial_f = eval(x0);
    let mut best_x = x0.to_vec();
    let mut best_f = initial_f;
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..4 {
        let (x, fx, it, conv) = simplex_run(
            &eval,
            &best_x,
            best_f,
            step,
            tol_f,
            tol_x,
            max_iters - iterations,
        );
        iterations += it;
        let improved = best_f - fx > tol_f * (1.0 + fx.abs());
        if fx <= best_f {
            best_x = x;
            best_f = fx;
        }
        converged = conv;
        if !conv || !improved || iterations >= max_iters || n == 0 {
            break;
        }
    }
    Minimum {
        x: best_x,
        f: best_f,
        initial_f,
        iterations,
        converged,
    }
}

fn simplex_run<F: Fn(&[f64]) -> f64>(
    eval: &F,
    x0: &[f64],
    f0: f64,
    step: &[f64],
    tol_f: f64,
    tol_x: f64,
    max_iters: usize,
) -> (Vec<f64>, f64, usize, bool) {
    let n = x0.len();
    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    let mut vals = vec![f0];
    for i in 0..n {
        let mut p = x0.to_vec();
        let h = if step[i] != 0.0 { step[i] } else { 0.05 };
        p[i] += h;
        let mut v = eval(&p);
        if !v.is_finite() {
            // try the opposite direction before accepting an infinite vertex
            p[i] = x0[i] - h;
            let alt = eval(&p);
            if alt.is_finite() {
                v = alt;
            } else {
                p[i] = x0[i] + h;
            }
        }
        pts.push(p);
        vals.push(v);
    }
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut iter = 0;
    let mut converged = false;
    let mut order: Vec<usize> = (0..=n).collect();
    while iter < max_iters {
        order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        let (ib, iw, isw) = (order[0], order[n], order[n.saturating_sub(1)]);
        let f_spread = vals[iw] - vals[ib];
        let x_spread = pts
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&pts[ib])
                    .map(|(u, v)| (u - v).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        let scale_x = 1.0 + pts[ib].iter().map(|v| v.abs()).fold(0.0, f64::max);
        if vals[ib].is_finite()
            && f_spread <= tol_f * (1.0 + vals[ib].abs())
            && x_spread <= tol_x * scale_x
        {
            converged = true;
            break;
        }
        iter += 1;
        let mut centroid = vec![0.0; n];
        for &k in &order[..n] {
            for (c, v) in centroid.iter_mut().zip(&pts[k]) {
                *c += v / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[iw])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };
        let xr = along(alpha);
        let fr = eval(&xr);
        if fr < vals[ib] {
            let xe = along(gamma);
            let fe = eval(&xe);
            if fe < fr {
                pts[iw] = xe;
                vals[iw] = fe;
            } else {
                pts[iw] = xr;
                vals[iw] = fr;
            }
            continue;
        }
        if fr < vals[isw] {
            pts[iw] = xr;
            vals[iw] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[iw] {
            let xc = along(rho * alpha);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = eval(&xc);
            (xc, fc)
        };
        if fc < vals[iw].min(fr) {
            pts[iw] = xc;
            vals[iw] = fc;
            continue;
        }
        let best = pts[ib].clone();
        for k in 0..=n {
            if k == ib {
                continue;
            }
            for (p, b) in pts[k].iter_mut().zip(&best) {
                *p = b + sigma * (*p - b);
            }
            vals[k] = eval(&pts[k]);
        }
    }
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let ib = order[0];
    (pts[ib].clone(), vals[ib], iter, converged)
}

//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Tolerances and work limits for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: 0.0,
            ..Self::default()
        }
    }

    pub fn relative(tol: f64) -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: tol,
            ..Self::default()
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    if !fc.is_finite() {
        return Err(Error::Evaluation(format!(
            "integrand is not finite at x = {centre}"
        )));
    }
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (x1, x2) = (centre - dx, centre + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() || !f2.is_finite() {
            let at = if f1.is_finite() { x2 } else { x1 };
            return Err(Error::Evaluation(format!(
                "integrand is not finite at x = {at}"
            )));
        }
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Ok(Segment {
        lo,
        hi,
        value,
        error,
    })
}

/// Integrates `f` over `[lo, hi]`, bisecting the interval with the largest error estimate
/// until the total estimate drops below `max(abs_tol, rel_tol·|I|, 50·ε·|I|)`.
///
/// Nodes never touch the endpoints, so integrable endpoint singularities are handled by
/// repeated bisection towards them.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    if !(lo < hi) || lo.is_nan() || hi.is_nan() {
        return Err(Error::Domain(format!(
            "integration requires lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(
            "integration limits must be finite; use integrate_to_infinity".into(),
        ));
    }
    let first = gk15(&f, lo, hi)?;
    let mut evaluations = 15;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    loop {
        let target = opts
            .abs_tol
            .max(opts.rel_tol * total.abs())
            .max(50.0 * f64::EPSILON * total.abs());
        if total_err <= target {
            break;
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::QuadratureNonConvergence {
                abs_error: total_err,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            // interval can no longer be split in floating point
            return Err(Error::QuadratureNonConvergence {
                abs_error: total_err,
                evaluations,
            });
        }
        let left = gk15(&f, worst.lo, mid)?;
        let right = gk15(&f, mid, worst.hi)?;
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed the drift of the running updates
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let abs_error_estimate: f64 = heap.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value,
        abs_error_estimate,
        evaluations,
    })
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    integrate(f, lo, hi, &QuadOptions::absolute(tol))
}

const MAX_BLOCKS: usize = 1100;

/// Integrates `f` over `[lo, ∞)` in blocks `[lo + h·(2^k - 1), lo + h·(2^(k+1) - 1)]`.
///
/// Blocks are added until the geometric extrapolation of the remaining tail, or the last
/// block itself when the block sequence is not yet decreasing, falls below the tolerance.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    first_width: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    if !lo.is_finite() || !(first_width > 0.0) {
        return Err(Error::Domain(
            "integrate_to_infinity needs a finite start and a positive width".into(),
        ));
    }
    let block_opts = QuadOptions {
        abs_tol: opts.abs_tol * 1e-3,
        ..*opts
    };
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut start = lo;
    let mut width = first_width;
    let mut previous: Option<f64> = None;
    for _ in 0..MAX_BLOCKS {
        let end = start + width;
        if !end.is_finite() {
            break;
        }
        let block = integrate(&f, start, end, &block_opts)?;
        total += block.value;
        err += block.abs_error_estimate;
        evaluations += block.evaluations;
        let size = block.value.abs();
        let tail = match previous {
            Some(prev) if prev > 0.0 && size < prev => {
                let ratio = size / prev;
                size * ratio / (1.0 - ratio)
            }
            Some(_) => f64::INFINITY,
            None => f64::INFINITY,
        };
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if tail <= target || (size == 0.0 && previous == Some(0.0)) {
            return Ok(QuadratureResult {
                value: total,
                abs_error_estimate: err + tail.min(size),
                evaluations,
            });
        }
        previous = Some(size);
        start = end;
        width *= 2.0;
    }
    Err(Error::QuadratureNonConvergence {
        abs_error: f64::INFINITY,
        evaluations,
    })
}

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Central-difference gradient and Hessian of a scalar function.
#[derive(Debug, Clone)]
pub struct Derivatives {
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
}

fn probe<F: Fn(&[f64]) -> f64>(f: &F, point: &[f64]) -> Result<f64> {
    let v = f(point);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!(
            "function is not finite at {point:?}"
        )))
    }
}

/// Gradient and Hessian of `f` at `theta` with step `h` in every coordinate.
///
/// Diagonal entries use the three-point second difference, off-diagonal entries the
/// four-point cross difference, and the Hessian is filled symmetrically.
pub fn numeric_gradient_and_hessian<F: Fn(&[f64]) -> f64>(
    f: F,
    theta: &[f64],
    h: f64,
) -> Result<Derivatives> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let d = theta.len();
    let f0 = probe(&f, theta)?;
    let mut gradient = DVector::zeros(d);
    let mut hessian = DMatrix::zeros(d, d);
    let mut x = theta.to_vec();
    for i in 0..d {
        x[i] = theta[i] + h;
        let fp = probe(&f, &x)?;
        x[i] = theta[i] - h;
        let fm = probe(&f, &x)?;
        x[i] = theta[i];
        gradient[i] = (fp - fm) / (2.0 * h);
        hessian[(i, i)] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut corner = |si: f64, sj: f64| {
                x[i] = theta[i] + si * h;
                x[j] = theta[j] + sj * h;
                let v = probe(&f, &x);
                x[i] = theta[i];
                x[j] = theta[j];
                v
            };
            let fpp = corner(1.0, 1.0)?;
            let fpm = corner(1.0, -1.0)?;
            let fmp = corner(-1.0, 1.0)?;
            let fmm = corner(-1.0, -1.0)?;
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            hessian[(i, j)] = v;
            hessian[(j, i)] = v;
        }
    }
    Ok(Derivatives { gradient, hessian })
}

use nalgebra::DMatrix;

use super::fit::{FitResult, Regime};
use crate::competitors::{log_likelihood_unchecked, Domain};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::specfun::numeric_gradient_and_hessian;

/// Asymptotic standard errors from the inverse observed information.
///
/// The Hessian is taken numerically in relative coordinates `θ = θ̂ + s ⊙ u` with
/// `s_i = |θ̂_i|`. Fixed parameters get `None`.
pub fn std_errors(fit: &FitResult, data: &Dataset) -> Result<Vec<Option<f64>>> {
    if fit.regime != Regime::Regular {
        return Err(Error::Regime(
            "standard errors are not available when the support depends on the parameters (beta > 0)".into(),
        ));
    }
    if !fit.converged {
        return Err(Error::Regime("standard errors need a converged fit".into()));
    }
    let spec = fit.model_id.spec();
    let free: Vec<usize> = (0..fit.params.len()).filter(|&i| !fit.fixed[i]).collect();
    let mut scale = Vec::with_capacity(free.len());
    for &i in &free {
        let v = fit.params[i];
        if v == 0.0 {
            if spec.param_domain[i] == Domain::Real {
                scale.push(1e-3);
                continue;
            }
            return Err(Error::SingularInformation(format!(
                "{} sits on the boundary of its domain",
                spec.param_names[i]
            )));
        }
        scale.push(v.abs());
    }
    let xs = data.values();
    let f = |u: &[f64]| {
        let mut theta = fit.params.clone();
        for (j, &i) in free.iter().enumerate() {
            theta[i] += scale[j] * u[j];
        }
        if spec.check(&theta).is_err() {
            return f64::NAN;
        }
        log_likelihood_unchecked(fit.model_id, &theta, xs)
    };
    let d = numeric_gradient_and_hessian(f, &vec![0.0; free.len()], 1e-4)
        .map_err(|e| Error::SingularInformation(format!("Hessian evaluation failed: {e}")))?;
    let info: DMatrix<f64> = -d.hessian;
    let chol = info.clone().cholesky().ok_or_else(|| {
        Error::SingularInformation("negative Hessian is not positive definite".into())
    })?;
    let cov = chol.inverse();
    let mut out = vec![None; fit.params.len()];
    for (j, &i) in free.iter().enumerate() {
        let var = cov[(j, j)];
        if !(var > 0.0 && var.is_finite()) {
            return Err(Error::SingularInformation(format!(
                "variance of {} is not positive",
                spec.param_names[i]
            )));
        }
        out[i] = Some(scale[j] * var.sqrt());
    }
    Ok(out)
}

//! Special functions and numerical kernels.

mod diff;
mod gamma;
mod kolmogorov;
mod quad;

pub use diff::{numeric_gradient_and_hessian, Derivatives};
pub use gamma::{
    ln_beta, ln_gamma, regularized_incomplete_beta, regularized_lower_gamma,
    regularized_upper_gamma,
};
pub use kolmogorov::{kolmogorov_sf, kolmogorov_sf_scaled};
pub use quad::{
    adaptive_quadrature, integrate, integrate_to_infinity, QuadOptions, QuadratureResult,
};

/// `ln(e^x + e^y)` without overflow.
pub fn log_add_exp(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return y;
    }
    if y == f64::NEG_INFINITY {
        return x;
    }
    let m = x.max(y);
    m + (-(x - y).abs()).exp().ln_1p()
}

/// `ln(1 - e^x)` for `x < 0`, accurate on both sides of `-ln 2`.
pub fn ln_1m_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

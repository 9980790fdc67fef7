//! The fourteen lifetime models compared on the Aarset data, behind one interface.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::dist::EglfrParams;
use crate::error::{Error, Result};
use crate::specfun::{ln_1m_exp, ln_beta, regularized_incomplete_beta};

/// Model identifiers, in the order used for tables and fan-out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    Eglfr,
    Ege,
    Egr,
    Glfr,
    Ge,
    Gr,
    Bmw,
    Blfr,
    Kglfr,
    Mcglfr,
    Mglfr,
    Pglfr,
    Gglfr,
    Gle,
}

impl ModelId {
    pub const ALL: [ModelId; 14] = [
        ModelId::Eglfr,
        ModelId::Ege,
        ModelId::Egr,
        ModelId::Glfr,
        ModelId::Ge,
        ModelId::Gr,
        ModelId::Bmw,
        ModelId::Blfr,
        ModelId::Kglfr,
        ModelId::Mcglfr,
        ModelId::Mglfr,
        ModelId::Pglfr,
        ModelId::Gglfr,
        ModelId::Gle,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModelId::Eglfr => "EGLFR",
            ModelId::Ege => "EGE",
            ModelId::Egr => "EGR",
            ModelId::Glfr => "GLFR",
            ModelId::Ge => "GE",
            ModelId::Gr => "GR",
            ModelId::Bmw => "BMW",
            ModelId::Blfr => "BLFR",
            ModelId::Kglfr => "KGLFR",
            ModelId::Mcglfr => "MCGLFR",
            ModelId::Mglfr => "MGLFR",
            ModelId::Pglfr => "PGLFR",
            ModelId::Gglfr => "GGLFR",
            ModelId::Gle => "GLE",
        }
    }

    /// True for EGLFR and its sub-models, which are fitted through the profile likelihood.
    pub fn is_eglfr_family(&self) -> bool {
        matches!(
            self,
            ModelId::Eglfr
                | ModelId::Ege
                | ModelId::Egr
                | ModelId::Glfr
                | ModelId::Ge
                | ModelId::Gr
        )
    }

    pub fn spec(&self) -> ModelSpec {
        use Domain::*;
        let (names, domains): (&'static [&'static str], &'static [Domain]) = match self {
            ModelId::Eglfr => (
                &["alpha", "beta", "a", "b"],
                &[Positive, Real, NonNegative, NonNegative],
            ),
            ModelId::Ege => (&["alpha", "beta", "a"], &[Positive, Real, Positive]),
            ModelId::Egr => (&["alpha", "beta", "b"], &[Positive, Real, Positive]),
            ModelId::Glfr => (&["alpha", "a", "b"], &[Positive, NonNegative, NonNegative]),
            ModelId::Ge => (&["alpha", "a"], &[Positive, Positive]),
            ModelId::Gr => (&["alpha", "b"], &[Positive, Positive]),
            ModelId::Bmw => (
                &["alpha", "beta", "a", "b", "gamma"],
                &[Positive, Positive, UnitInterval, UnitInterval, Positive],
            ),
            ModelId::Blfr | ModelId::Kglfr | ModelId::Mglfr | ModelId::Pglfr | ModelId::Gle => (
                &["alpha", "beta", "a", "b"],
                &[Positive, Positive, Positive, Positive],
            ),
            ModelId::Mcglfr => (
                &["alpha", "beta", "gamma", "a", "b"],
                &[Positive, Positive, Positive, Positive, Positive],
            ),
            ModelId::Gglfr => (
                &["alpha", "beta", "a", "b"],
                &[Positive, BelowOne, Positive, Positive],
            ),
        };
        ModelSpec {
            model_id: *self,
            param_names: names,
            param_domain: domains,
            k: names.len(),
        }
    }

    /// Parameter vector of an EGLFR-family model as an [`EglfrParams`].
    pub fn eglfr_params(&self, params: &[f64]) -> Result<EglfrParams> {
        let spec = self.spec();
        spec.check(params)?;
        let p = match self {
            ModelId::Eglfr => EglfrParams::new(params[0], params[1], params[2], params[3]),
            ModelId::Ege => EglfrParams::ege(params[0], params[1], params[2]),
            ModelId::Egr => EglfrParams::egr(params[0], params[1], params[2]),
            ModelId::Glfr => EglfrParams::glfr(params[0], params[1], params[2]),
            ModelId::Ge => EglfrParams::ge(params[0], params[1]),
            ModelId::Gr => EglfrParams::gr(params[0], params[1]),
            _ => return Err(Error::Regime(format!("{self} is not an EGLFR sub-model"))),
        };
        p
    }

    /// Model parameter vector from a full EGLFR parameter set (dropping fixed entries).
    pub fn params_from_eglfr(&self, p: &EglfrParams) -> Result<Vec<f64>> {
        Ok(match self {
            ModelId::Eglfr => vec![p.alpha, p.beta, p.a, p.b],
            ModelId::Ege => vec![p.alpha, p.beta, p.a],
            ModelId::Egr => vec![p.alpha, p.beta, p.b],
            ModelId::Glfr => vec![p.alpha, p.a, p.b],
            ModelId::Ge => vec![p.alpha, p.a],
            ModelId::Gr => vec![p.alpha, p.b],
            _ => return Err(Error::Regime(format!("{self} is not an EGLFR sub-model"))),
        })
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        ModelId::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == upper)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

impl Serialize for ModelId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Open-interval constraint on a single parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    Positive,
    NonNegative,
    UnitInterval,
    BelowOne,
    Real,
}

impl Domain {
    pub fn contains(&self, v: f64) -> bool {
        v.is_finite()
            && match self {
                Domain::Positive => v > 0.0,
                Domain::NonNegative => v >= 0.0,
                Domain::UnitInterval => v > 0.0 && v < 1.0,
                Domain::BelowOne => v < 1.0,
                Domain::Real => true,
            }
    }

    /// Map from an unconstrained coordinate into the domain.
    pub fn from_unconstrained(&self, q: f64) -> f64 {
        match self {
            Domain::Positive | Domain::NonNegative => q.exp(),
            Domain::UnitInterval => 1.0 / (1.0 + (-q).exp()),
            Domain::BelowOne => 1.0 - q.exp(),
            Domain::Real => q,
        }
    }

    /// Inverse of [`Domain::from_unconstrained`].
    pub fn to_unconstrained(&self, v: f64) -> f64 {
        match self {
            Domain::Positive | Domain::NonNegative => v.ln(),
            Domain::UnitInterval => (v / (1.0 - v)).ln(),
            Domain::BelowOne => (1.0 - v).ln(),
            Domain::Real => v,
        }
    }
}

/// Static description of a model's parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ModelSpec {
    pub model_id: ModelId,
    pub param_names: &'static [&'static str],
    pub param_domain: &'static [Domain],
    pub k: usize,
}

impl ModelSpec {
    pub fn check(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.k {
            return Err(Error::InvalidParams(format!(
                "{} expects {} parameters, got {}",
                self.model_id,
                self.k,
                params.len()
            )));
        }
        for ((name, domain), v) in self.param_names.iter().zip(self.param_domain).zip(params) {
            if !domain.contains(*v) {
                return Err(Error::Domain(format!(
                    "{} parameter {name} = {v} outside {domain:?}",
                    self.model_id
                )));
            }
        }
        Ok(())
    }
}

/// Linear-failure-rate baseline `G(x) = 1 - exp(-(a x + b x²/2))` with density `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineG {
    pub a: f64,
    pub b: f64,
}

impl BaselineG {
    pub fn z(&self, x: f64) -> f64 {
        x * (self.a + 0.5 * self.b * x)
    }

    pub fn ln_g(&self, x: f64) -> f64 {
        self.b.mul_add(x, self.a).ln() - self.z(x)
    }

    pub fn g(&self, x: f64) -> f64 {
        self.ln_g(x).exp()
    }

    /// `ln G(x)`.
    pub fn ln_cdf(&self, x: f64) -> f64 {
        ln_1m_exp(-self.z(x))
    }

    #[allow(non_snake_case)]
    pub fn G(&self, x: f64) -> f64 {
        -(-self.z(x)).exp_m1()
    }
}

/// `ln(β / (1 - e^(-β)))`, with its Taylor expansion near 0.
fn ln_poisson_norm(beta: f64) -> f64 {
    if beta < 1e-5 {
        beta / 2.0 - beta * beta / 24.0
    } else {
        (beta / -(-beta).exp_m1()).ln()
    }
}

fn log_pdf_unchecked(id: ModelId, p: &[f64], x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NEG_INFINITY;
    }
    match id {
        ModelId::Eglfr
        | ModelId::Ege
        | ModelId::Egr
        | ModelId::Glfr
        | ModelId::Ge
        | ModelId::Gr => match id.eglfr_params(p) {
            Ok(q) => q.ln_pdf(x),
            Err(_) => f64::NEG_INFINITY,
        },
        ModelId::Bmw => {
            let (alpha, beta, a, b, gamma) = (p[0], p[1], p[2], p[3], p[4]);
            let ln_h = alpha.ln() + gamma * x.ln() + beta * x;
            let h = ln_h.exp();
            alpha.ln() + (gamma - 1.0) * x.ln() + beta.mul_add(x, gamma).ln()
                - ln_beta(a, b).unwrap_or(f64::NAN)
                + beta * x
                - b * h
                + (a - 1.0) * ln_1m_exp(-h)
        }
        ModelId::Blfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            g.ln_g(x) - ln_beta(alpha, beta).unwrap_or(f64::NAN) + (alpha - 1.0) * g.ln_cdf(x)
                - (beta - 1.0) * g.z(x)
        }
        ModelId::Kglfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            let ln_gc = g.ln_cdf(x);
            (alpha * beta).ln()
                + g.ln_g(x)
                + (alpha - 1.0) * ln_gc
                + (beta - 1.0) * ln_1m_exp(alpha * ln_gc)
        }
        ModelId::Mcglfr => {
            let (alpha, beta, gamma, g) = (p[0], p[1], p[2], BaselineG { a: p[3], b: p[4] });
            let ln_gc = g.ln_cdf(x);
            gamma.ln() + g.ln_g(x) - ln_beta(alpha, beta).unwrap_or(f64::NAN)
                + (alpha * gamma - 1.0) * ln_gc
                + (beta - 1.0) * ln_1m_exp(gamma * ln_gc)
        }
        ModelId::Mglfr => {
            let (alpha, beta, a, b) = (p[0], p[1], p[2], p[3]);
            let h = a * x + b * x.powf(beta);
            alpha.ln() + (a + b * beta * x.powf(beta - 1.0)).ln() - h
                + (alpha - 1.0) * ln_1m_exp(-h)
        }
        ModelId::Pglfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            let ln_gc = g.ln_cdf(x);
            alpha.ln() + ln_poisson_norm(beta) + g.ln_g(x) + (alpha - 1.0) * ln_gc
                - beta * (alpha * ln_gc).exp()
        }
        ModelId::Gglfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            let ln_gc = g.ln_cdf(x);
            let tail = -(alpha * ln_gc).exp_m1();
            (alpha * (1.0 - beta)).ln() + g.ln_g(x) + (alpha - 1.0) * ln_gc
                - 2.0 * (-beta * tail).ln_1p()
        }
        ModelId::Gle => {
            let (alpha, beta, a, b) = (p[0], p[1], p[2], p[3]);
            let u = x * (a + 0.5 * b * x) - beta;
            if u <= 0.0 {
                return f64::NEG_INFINITY;
            }
            alpha.ln() + b.mul_add(x, a).ln() + (alpha - 1.0) * u.ln() - u.powf(alpha)
        }
    }
}

fn cdf_unchecked(id: ModelId, p: &[f64], x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Ok(0.0);
    }
    let v = match id {
        ModelId::Eglfr
        | ModelId::Ege
        | ModelId::Egr
        | ModelId::Glfr
        | ModelId::Ge
        | ModelId::Gr => id.eglfr_params(p)?.cdf(x),
        ModelId::Bmw => {
            let (alpha, beta, a, b, gamma) = (p[0], p[1], p[2], p[3], p[4]);
            let h = (alpha.ln() + gamma * x.ln() + beta * x).exp();
            regularized_incomplete_beta(a, b, -(-h).exp_m1())?
        }
        ModelId::Blfr => {
            let g = BaselineG { a: p[2], b: p[3] };
            regularized_incomplete_beta(p[0], p[1], g.G(x))?
        }
        ModelId::Kglfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            -(beta * ln_1m_exp(alpha * g.ln_cdf(x))).exp_m1()
        }
        ModelId::Mcglfr => {
            let (alpha, beta, gamma, g) = (p[0], p[1], p[2], BaselineG { a: p[3], b: p[4] });
            regularized_incomplete_beta(alpha, beta, (gamma * g.ln_cdf(x)).exp())?
        }
        ModelId::Mglfr => {
            let (alpha, beta, a, b) = (p[0], p[1], p[2], p[3]);
            let h = a * x + b * x.powf(beta);
            (alpha * ln_1m_exp(-h)).exp()
        }
        ModelId::Pglfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            let ga = (alpha * g.ln_cdf(x)).exp();
            if beta < 1e-5 {
                // expm1(-βu)/expm1(-β) = u (1 - β(u - 1)/2 + ...)
                ga * (1.0 - 0.5 * beta * (ga - 1.0))
            } else {
                (-beta * ga).exp_m1() / (-beta).exp_m1()
            }
        }
        ModelId::Gglfr => {
            let (alpha, beta, g) = (p[0], p[1], BaselineG { a: p[2], b: p[3] });
            let ga = (alpha * g.ln_cdf(x)).exp();
            ga / (1.0 - beta * (1.0 - ga))
        }
        ModelId::Gle => {
            let (alpha, beta, a, b) = (p[0], p[1], p[2], p[3]);
            let u = x * (a + 0.5 * b * x) - beta;
            if u <= 0.0 {
                0.0
            } else {
                -(-u.powf(alpha)).exp_m1()
            }
        }
    };
    Ok(v.clamp(0.0, 1.0))
}

/// Log density of `id` at `x`; `-∞` outside the model's support.
pub fn model_log_pdf(id: ModelId, params: &[f64], x: f64) -> Result<f64> {
    id.spec().check(params)?;
    Ok(log_pdf_unchecked(id, params, x))
}

/// Distribution function of `id` at `x`.
pub fn model_cdf(id: ModelId, params: &[f64], x: f64) -> Result<f64> {
    id.spec().check(params)?;
    cdf_unchecked(id, params, x)
}

/// Sum of log densities over `data`; `-∞` when any point falls outside the support.
pub fn model_log_likelihood(id: ModelId, params: &[f64], data: &[f64]) -> Result<f64> {
    id.spec().check(params)?;
    Ok(log_likelihood_unchecked(id, params, data))
}

pub(crate) fn log_likelihood_unchecked(id: ModelId, params: &[f64], data: &[f64]) -> f64 {
    if id.is_eglfr_family() {
        return match id.eglfr_params(params) {
            Ok(p) => crate::inference::log_likelihood_values(&p, data),
            Err(_) => f64::NEG_INFINITY,
        };
    }
    let mut total = 0.0;
    for &x in data {
        let v = log_pdf_unchecked(id, params, x);
        if !(v > f64::NEG_INFINITY) || v.is_nan() {
            return f64::NEG_INFINITY;
        }
        total += v;
    }
    total
}

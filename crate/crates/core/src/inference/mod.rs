//! Maximum-likelihood estimation.

mod fit;
mod likelihood;
mod nonregular;
mod optim;
mod stderr;

pub use fit::{fit_family, fit_model, fit_regular, FamilyMask, FitResult, Regime, RestartTrace};
pub(crate) use likelihood::log_likelihood_values;
pub use likelihood::{log_likelihood, profile_alpha, score};
pub use nonregular::{fit_nonregular, fit_nonregular_model};
pub use optim::{nelder_mead, InitStrategy, Minimum, OptimizerConfig};
pub use stderr::std_errors;

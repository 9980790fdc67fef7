//! Moments, generating function, shape measures, entropies and the characterization
//! recursion.

mod characterization;
mod entropy;
mod mgf;
mod moments;
mod series;
mod shape;

pub use characterization::{characterization_delta, u_transform};
pub use entropy::{renyi_entropy, renyi_entropy_direct, shannon_entropy, shannon_entropy_direct};
pub use mgf::{mgf_numeric, mgf_series, mgf_series_as_printed};
pub use moments::{g_k, moment_closed_even, moment_exists, moment_numeric, moment_series, GkValue};
pub use series::{SeriesAccumulator, DEFAULT_MAX_TERMS};
pub use shape::{bowley_skewness, moors_kurtosis};

pub mod competitors;
pub mod data;
pub mod dist;
pub mod error;
pub mod gof;
pub mod inference;
pub mod mc;
pub mod properties;
pub mod report;
pub mod specfun;

pub use competitors::ModelId;
pub use data::Dataset;
pub use dist::{EglfrParams, Mode, Support};
pub use error::{Error, Result};

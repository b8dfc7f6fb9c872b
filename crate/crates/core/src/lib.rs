pub mod bounds;
pub mod cli;
pub mod error;
pub mod explorer;
pub mod inverse;
pub mod kernel;
pub mod set;
pub mod witness;

pub use error::{Error, Result};
pub use set::{dilate, make_set, normalize_dilation, CoefficientVector, FiniteIntSet, SumsetKind, SumsetResult};

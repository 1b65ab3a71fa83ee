pub mod cli;
pub mod corpus;
pub mod error;
pub mod functionals;
pub mod grunsky;
pub mod interval;
pub mod optimizer;
pub mod series;

pub use error::{Error, Result};

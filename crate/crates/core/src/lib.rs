//! Construction and certification of packings of equidimensional subspaces
//! of real or complex space.

pub mod analysis;
pub mod cli;
pub mod construct;
pub mod error;
pub mod exec;
pub mod format;
pub mod generators;
pub mod linalg;
pub mod model;
pub mod rational;
mod tolerance;

pub use error::{Error, Result};
pub use exec::Execution;
pub use tolerance::Tolerance;

//! Command-line plumbing: sequence emission, b-files and the OEIS client,
//! renders, plot data and the property suite.

pub mod bfile;
pub mod checks;
pub mod error;
pub mod oeis;
pub mod plot;
pub mod render;
pub mod sequence;

pub use error::{CliError, CliResult};

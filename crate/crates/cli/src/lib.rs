//! Command-line front end: polytope files, decomposition reports, lattice
//! sums and SVG panels.
//!
//! Exit codes of the `gramcal` binary: `0` when every identity verified
//! exactly, `1` when a verdict is not `equal`, `2` on input errors.

pub mod commands;
pub mod decompose;
pub mod error;
pub mod file;
pub mod lattice;
pub mod render;
pub mod report;

pub use decompose::{decompose, verify, Decomposition, Mode};
pub use error::{CliError, Result};
pub use file::PolytopeFile;
pub use report::Report;

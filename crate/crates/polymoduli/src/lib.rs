//! File formats and the command-line front end for `polymoduli-core`.

pub mod cli;
pub mod formats;

pub use polymoduli_core;

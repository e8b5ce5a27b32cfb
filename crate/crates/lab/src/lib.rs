//! File formats, SVG rendering, sweeps and the command line for
//! `patchwork-lab-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod svg;
pub mod sweep;

pub use cli::run;
pub use error::CliError;

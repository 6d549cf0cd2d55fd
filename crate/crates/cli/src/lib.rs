//! File formats and the command-line front end for `repfree-core`.

pub mod cli;
pub mod formats;

pub use cli::{run, run_with_env, ExitStatus};

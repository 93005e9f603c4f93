//! Library side of the `colloids` executable: subcommand implementations,
//! run manifests and the verification suites.

pub mod commands;
mod error;
pub mod manifest;
pub mod verify;

pub use error::{CliError, Result};
pub use manifest::{input_hash, OutputDir, RunManifest, SCHEMA_VERSION};

/// Size the global rayon pool from `COLLOIDS_THREADS` when it is set.
pub fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("COLLOIDS_THREADS") else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("COLLOIDS_THREADS = '{value}' is not a positive integer")))?;
    // a second initialisation in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

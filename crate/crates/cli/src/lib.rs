//! File formats and command-line front end for `rescue-core`.

pub mod cli;
mod error;
pub mod render;
pub mod scenario;

pub use cli::run;
pub use error::CliError;
pub use scenario::{parse_scenario, DecayConfig, ScenarioConfig};

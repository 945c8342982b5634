pub mod config;
pub mod determinants;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod mobius;
pub mod principal;
pub mod report;
pub mod runner;
pub mod shift;
pub mod trace_formulas;

pub use config::{parse_config, ConfigError, ExperimentConfig};
pub use error::{Error, Result};
pub use report::{Check, VerificationReport};
pub use runner::run_experiment;

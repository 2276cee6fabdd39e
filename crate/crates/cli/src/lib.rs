//! Batch driver for the `talenti-core` verifications: JSON configuration in,
//! CSV/JSON artifacts out, exit status 0 pass, 1 usage/config, 2 inequality
//! or hypothesis failure, 3 numerical failure.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;

pub use commands::{Outcome, Status};
pub use config::RunConfig;

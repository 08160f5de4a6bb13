//! Experiment runner behind the `polytoeplitz` binary.

pub mod commands;
pub mod config;

pub use commands::{reducer_for, run, Check, VerifyResult};
pub use config::{Command, RunConfig};

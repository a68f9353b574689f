//! Parameter sweeps, report files and the command-line front end for the
//! fractional Ostrowski verification kernels in [`fracineq_core`].

pub mod config;
pub mod report;
pub mod sweep;

pub use config::{ConfigError, SweepConfig, XPoints};
pub use fracineq_core;
pub use sweep::{run_sweep, RunOptions, SweepResult, Summary};

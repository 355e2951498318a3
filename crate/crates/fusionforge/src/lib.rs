//! Command-line tooling around `fusionforge-core`: configuration, JSON
//! formats and the exhaustive verification suites.

pub mod cli;
pub mod config;
pub mod json;
pub mod suites;

pub use config::Config;

//! Command-line surface: one subcommand per pipeline, charts, JSON export and
//! comparison against stored results.

pub mod chart;
pub mod commands;
pub mod golden;
pub mod json;

pub use chart::{render_chart, ChartFormat, ChartSpec};
pub use commands::{exit_code, run, Cli, Command, Output};
pub use golden::{compare_golden, GoldenError};

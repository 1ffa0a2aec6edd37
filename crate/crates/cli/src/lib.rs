//! Scenario runner for `qthermo`: JSON configs, a registry of built-in
//! scenarios, CSV and SVG output, and audit reports.

pub mod config;
pub mod csv;
pub mod registry;
pub mod report;
pub mod run;
pub mod svg;

pub use config::{parse_config, resolve_scenario, ConfigError, ModelKind, ScenarioConfig};
pub use report::{audit_report, exit_code, RunReport};
pub use run::{run_scenario, simulate, RunError, RunOptions, Simulation};

//! Config-driven experiments: a JSON config selects a space, symbols and checks;
//! every check renders its report in memory and the reports are written in a fixed
//! order, so identical configs give byte-identical output directories.

mod config;
mod report;
mod runner;

pub use config::{
    CheckKind, ExperimentConfig, Family, GeometryConfig, GeometryTolerances, Overrides, Plan, RkhConfig,
    SymbolLiteral, Tolerances, MAX_DIM, SCHEMA_VERSION,
};
pub use report::{Artifact, CheckOutcome, RunReport, TOOL_NAME, TOOL_VERSION};
pub use runner::{run, run_assemble, run_check, run_commute, run_geometry, run_rkh_algebra, run_spectrum, run_verify};

/// The JSON schema of [`ExperimentConfig`].
pub const CONFIG_SCHEMA: &str = include_str!("../../schema/experiment-config.schema.json");

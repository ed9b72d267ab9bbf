//! Library backing the `bdris` command-line tool.
//!
//! The binary stays a thin argument-parsing shell; everything testable
//! lives here: plan files ([`plan`]), parallel experiment execution
//! ([`experiment`]), CSV rendering ([`report`]), and SVG chart rendering
//! ([`chart`]).

pub mod chart;
pub mod experiment;
pub mod plan;
pub mod report;

pub use experiment::{run_plan, ExperimentOutcome, RunRecord, SummaryRecord};
pub use plan::ExperimentPlan;

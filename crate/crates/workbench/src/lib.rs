//! Verification harness, census and report types for the `linset` tool.

pub mod census;
pub mod checks;
pub mod context;
pub mod report;
pub mod sample;
pub mod spread;

pub use context::Context;
pub use report::{CensusRow, LinearSetReport, Status, VerificationReport};

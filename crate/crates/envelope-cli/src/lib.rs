//! Library half of the command line workbench: group specs and resolution,
//! report formats, and the sweep driver. The `envelope` binary is a thin
//! shell over these modules so that integration tests can drive the same
//! code in process.

pub mod commands;
pub mod report;
pub mod resolve;
pub mod spec;
pub mod sweep;

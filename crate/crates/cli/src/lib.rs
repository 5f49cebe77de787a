//! Problem files, command execution and report formatting for the
//! `sumsetdim` binary.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{run_command, Command, Outcome, Overrides, RunError, Settings};
pub use problem::{parse_problem, FileOptions, ParseError, ProblemSpec};
pub use report::{parse_machine, DimensionRecord, MachineOutput, Report};

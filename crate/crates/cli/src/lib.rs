//! Command-line front end: spec parsing, command dispatch and output
//! formatting for the `fracineq` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
mod run;
pub mod spec;

pub use config::RunConfig;
pub use run::{execute, run, CliError};
pub use spec::{parse_function, parse_h, parse_spec, ParseError, Spec};

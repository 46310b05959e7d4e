//! Command-line front end: polynomial parsing, job validation, dispatch
//! to the `monodromy` engine, hypothesis diagnostics and reports in text
//! or JSON form.

pub mod audit;
pub mod codec;
pub mod job;
pub mod parse;
pub mod report;
mod run;

pub use job::{Assumptions, Command, Format, Inputs, JobError, JobSpec, ModeName};
pub use parse::{format_polynomial, parse_polynomial, ParseError};
pub use report::{Check, Hypothesis, Report, Status};
pub use run::{characteristic_polynomial, run};

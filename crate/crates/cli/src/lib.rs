//! Command-line front end: configs in, JSON or text reports out.

pub mod config;
pub mod input;
pub mod report;
pub mod run;

pub use config::{Command, RunConfig};
pub use report::{emit_matrix, render_text, Check, MatrixSection, Report};
pub use run::{execute, prepare, run};

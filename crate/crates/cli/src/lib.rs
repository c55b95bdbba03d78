//! JSON frame files, reports and the commands behind the `fusionscale` binary.

pub mod cli;
pub mod error;
pub mod examples;
pub mod file;
pub mod format;
pub mod generate;
pub mod report;

pub use cli::{run, Cli, Command, Output};
pub use error::CliError;
pub use file::{emit_frame_file, parse_frame_file, parse_frame_str, FrameFile};
pub use report::Report;

//! File formats and command implementations behind the `hadamard` binary.

pub mod commands;
pub mod format;

pub use commands::{
    run_bench, run_convert, run_generate, run_verify, BenchReport, CliError, GenerateOptions,
    RunSummary, Verdict,
};
pub use format::{parse, Format, ParseError, Record, RecordWriter};

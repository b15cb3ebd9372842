//! Report building and batch sweeps behind the `fano-instanton` binary.

pub mod report;
pub mod sweep;

pub use report::{build_report, render_text, DomainError, GeometryArg, Report, ReportRequest};
pub use sweep::{parse_grid, sweep_lines, sweep_records, to_json_lines, SweepOutput, SweepRecord};

//! Batch driver: parameter sweeps, power-law fits and the regime comparison
//! report.

mod config;
mod fit;
mod report;
mod sweep;

pub use config::{Grid, Method, SweepConfig};
pub use fit::{fit_slope, fit_slope_xy, SlopeFit};
pub use report::{compare_report, Check, Normalization, Report, Status, SweepSummary};
pub use sweep::{
    evaluate_point, relative_difference, run_sweep, write_csv, write_csv_file, CsvTable, SweepRow, CSV_COLUMNS,
};

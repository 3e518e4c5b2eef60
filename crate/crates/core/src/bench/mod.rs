mod experiments;
mod lp;
mod optima;
mod report;

pub use experiments::{
    choose_degree, compare_decoders, evaluate, generate_batch, loglog_slope, profile_for,
    run_benchmark, scaling_study, sweep_degree, validate_approximation, BenchConfig, DegreeRule,
    DegreeSweep, EvalMode, PreparedInstance, ScalingRow, ValidationRow, ValidationSummary,
    ValidationTable, RATIO_FLAG_BAND,
};
pub use lp::{export_lp, lp_text};
pub use optima::{enumerate_optima, Optima, MAX_ENUMERATION_VARS};
pub use report::{AggregateRow, BenchmarkReport, ReportRow, AGGREGATE_HEADER, REPORT_HEADER};

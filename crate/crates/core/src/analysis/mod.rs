//! Performance metrics, statistical tests and report generation.

pub mod metrics;
pub mod reports;
pub mod stats;

pub use metrics::{
    ecdf_curve, error_at_budget, hitting_time, log_grid, logscore, sr_ar_ert, RuntimeStats, DEFAULT_BUDGETS,
    DEFAULT_TARGETS,
};
pub use reports::{cluster_table, make_reports, ClusterRow, Marker, ReportBundle, ReportConfig};
pub use stats::{
    benjamini_hochberg, friedman_conover, mann_whitney_u, rank_cliques, wilcoxon_signed_rank, Direction,
    FriedmanResult, PairwiseResult, TestResult,
};

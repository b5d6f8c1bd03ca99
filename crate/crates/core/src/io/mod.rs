//! Instance formats, the experiment driver and reporting.

mod experiment;
mod graph;

pub use graph::{max_cut_enumerate, maxcut_to_bpo, parse_rudy, write_rudy, Graph};
pub use experiment::{
    instance_group, read_csv, relative_gap, run_experiment, shifted_geometric_mean, summarize, write_csv,
    ExperimentConfig, Instance, RunMethod, RunReport, Setting, Summary, SummaryCell, SummaryRow, GAP_SHIFT, TIME_SHIFT,
};

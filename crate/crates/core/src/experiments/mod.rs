//! Monte Carlo experiments over random recursive trees and urns.

pub mod config;
pub mod estimates;
mod growth;
pub mod kernel;
pub(crate) mod parallel;
pub mod persistence;
pub mod result;
pub mod stats;

pub use config::{ExperimentConfig, ExperimentKind};
pub use estimates::{
    betweenness_index_envelope, confidence_coverage, dickman_samples, estimate_expected_center_index,
    estimate_expected_rank, estimate_index_tail, estimate_rank_tail, estimate_root_center_probability,
    max_subtree_fractions, run_experiment, simulate, table_records, ReplicateTable,
};
pub use kernel::{Kernel, Snapshot};
pub use persistence::{run_persistence, trajectory_stream, PersistenceRecord, PersistenceRun, Track};
pub use result::{ExperimentResult, Record, CSV_HEADER};

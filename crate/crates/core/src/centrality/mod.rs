//! Tree centralities computed in linear time by rerooting.
//!
//! All scores are derived from one [`SubtreeSizes`](crate::tree::SubtreeSizes)
//! array rooted at vertex 0. For an edge from parent `p` to child `u`, the
//! component of `T \ p` containing `u` has `size[u]` vertices and the
//! component of `T \ u` containing `p` has `n - size[u]`.

mod measure;
pub mod oracle;
mod rank;
mod rumor;
mod scores;

pub use measure::{Direction, Measure};
pub use rank::{
    center_and_root_rank, compute_profile, confidence_set, rank_by, CenterReport, CentralityProfile, ScoreVec,
};
pub use rumor::{rumor_scores, RumorScores};
pub use scores::{
    betweenness_pairs_scores, betweenness_q_scores, betweenness_sq_scores, closeness_scores, degree_scores,
    jordan_scores,
};

pub(crate) use rumor::{RumorComparator, TIE_TOLERANCE_PER_VERTEX as RUMOR_TIE_TOLERANCE};
pub(crate) use scores::power_guard;

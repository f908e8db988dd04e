//! Urn processes that couple to subtree growth in a recursive tree, and the
//! limit law of the largest root subtree.

mod dickman;
mod hoppe;
mod polya;

pub use dickman::{max_subtree_fraction, sample_dickman, DickmanSample};
pub use hoppe::{hoppe_run, HoppeRow, HoppeState, HoppeUrn};
pub use polya::{polya_diagonal_hit_estimate, polya_run, HitEstimate, PolyaState};

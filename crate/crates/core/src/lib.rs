//! Uniform random recursive trees and the centrality of their vertices.
//!
//! * [`tree`]: generation, subtree sizes and the edge-list format.
//! * [`centrality`]: Jordan, closeness, rumor, betweenness and degree scores,
//!   tie-broken rankings, centers and brute-force oracles.
//! * [`urns`]: Pólya and Hoppe urns and the max-Dickman-Goncharov sampler.
//! * [`experiments`]: the seeded Monte Carlo harness.

pub mod centrality;
pub mod error;
pub mod experiments;
pub mod format;
pub mod rng;
pub mod tree;
pub mod urns;
pub mod verify;

pub use centrality::{CenterReport, CentralityProfile, Measure};
pub use error::{Error, Result};
pub use rng::RngStream;
pub use tree::{grow_urrt, subtree_sizes, RecursiveTree, SubtreeSizes};

use rand::Rng;

use crate::error::{Error, Result};
use crate::tree::{RecursiveTree, SubtreeSizes};

/// A draw of `max{U1, (1-U1)U2, (1-U1)(1-U2)U3, ...}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickmanSample {
    pub value: f64,
    /// Uniforms consumed before the stopping rule fired.
    pub draws: u32,
}

/// Exact sampler: once the remaining product `(1-U1)...(1-Uk)` drops below
/// the running maximum, no later term can exceed it.
pub fn sample_dickman<R: Rng + ?Sized>(rng: &mut R) -> DickmanSample {
    let mut max = 0.0f64;
    let mut rest = 1.0f64;
    let mut draws = 0u32;
    loop {
        let u: f64 = rng.random();
        draws += 1;
        max = max.max(rest * u);
        rest *= 1.0 - u;
        if rest < max {
            return DickmanSample { value: max, draws };
        }
    }
}

/// Largest subtree hanging off the root, as a fraction of `n`.
pub fn max_subtree_fraction(tree: &RecursiveTree, sizes: &SubtreeSizes) -> Result<f64> {
    let n = tree.len();
    if n < 2 {
        return Err(Error::invalid("max subtree fraction needs n >= 2"));
    }
    let best = tree
        .parents()
        .iter()
        .zip(sizes.as_slice())
        .skip(1)
        .filter(|(&p, _)| p == 0)
        .map(|(_, &s)| s)
        .max()
        .unwrap_or(0);
    Ok(best as f64 / n as f64)
}

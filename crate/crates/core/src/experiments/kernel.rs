//! Allocation-free evaluation of center index and root rank for all five
//! measures at once.
//!
//! One reverse sweep gathers per-vertex child aggregates, one forward sweep
//! reroots closeness and rumor scores and compares every vertex against the
//! running center and against the root. No ranking is sorted: the root rank
//! is one plus the number of vertices at least as central as the root (ties
//! go to the later arrival, which is never the root).

use std::cmp::Ordering;

use crate::centrality::{Measure, RumorComparator};
use crate::error::{Error, Result};

/// Slot order used by [`Snapshot`].
pub const SLOTS: [Measure; 5] = Measure::STANDARD;
pub const JORDAN: usize = 0;
pub const CLOSENESS: usize = 1;
pub const RUMOR: usize = 2;
pub const BETWEENNESS: usize = 3;
pub const DEGREE: usize = 4;

/// Center label (`I_n`) and root rank (`R_n`) per slot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Snapshot {
    pub center: [u32; 5],
    pub root_rank: [u32; 5],
}

/// Maps a measure onto its kernel slot. The pairs form of betweenness ranks
/// identically to the squared form, so both share slot 3.
pub fn slot_of(measure: Measure) -> usize {
    match measure {
        Measure::Jordan => JORDAN,
        Measure::Closeness => CLOSENESS,
        Measure::Rumor => RUMOR,
        Measure::BetweennessSq | Measure::BetweennessPairs | Measure::BetweennessQ(_) => BETWEENNESS,
        Measure::Degree => DEGREE,
    }
}

pub struct Kernel {
    q: u32,
    ln: Vec<f64>,
    max_child: Vec<u32>,
    pow_sum: Vec<u64>,
    degree: Vec<u32>,
    depth: Vec<u32>,
    closeness: Vec<u64>,
    log_phi: Vec<f64>,
}

impl Kernel {
    /// `q` is the betweenness exponent (2 for ordinary betweenness).
    pub fn new(q: u32) -> Self {
        Self {
            q,
            ln: vec![0.0],
            max_child: Vec::new(),
            pow_sum: Vec::new(),
            degree: Vec::new(),
            depth: Vec::new(),
            closeness: Vec::new(),
            log_phi: Vec::new(),
        }
    }

    /// Checks the overflow guard for trees up to `n_max` vertices and sizes
    /// the buffers.
    pub fn prepare(&mut self, n_max: usize) -> Result<()> {
        if self.q < 2 {
            return Err(Error::invalid("betweenness exponent must be at least 2"));
        }
        crate::centrality::power_guard(n_max, self.q)?;
        if self.ln.len() <= n_max {
            let start = self.ln.len();
            self.ln.extend((start..=n_max).map(|k| (k as f64).ln()));
        }
        for buf in [&mut self.max_child, &mut self.degree, &mut self.depth] {
            buf.reserve(n_max.saturating_sub(buf.len()));
        }
        Ok(())
    }

    #[inline]
    fn pow(&self, s: u64) -> u64 {
        if self.q == 2 {
            s * s
        } else {
            s.pow(self.q)
        }
    }

    /// Evaluates a tree given its parent array and rooted subtree sizes.
    /// [`Kernel::prepare`] must have been called with `n_max >= parent.len()`.
    pub fn evaluate(&mut self, parent: &[u32], size: &[u32]) -> Snapshot {
        let n = parent.len();
        assert!(self.ln.len() > n || n == 1, "kernel not prepared for n = {n}");
        assert_eq!(size.len(), n);
        let nn = n as u64;

        reset(&mut self.max_child, n, 0);
        reset(&mut self.pow_sum, n, 0);
        reset(&mut self.degree, n, 0);
        reset(&mut self.depth, n, 0);
        reset(&mut self.closeness, n, 0);
        reset(&mut self.log_phi, n, 0.0);

        let mut c_root = 0u64;
        let mut l_root = 0f64;
        for v in (1..n).rev() {
            let p = parent[v] as usize;
            let s = size[v];
            if s > self.max_child[p] {
                self.max_child[p] = s;
            }
            self.pow_sum[p] += self.pow(s as u64);
            self.degree[p] += 1;
            c_root += s as u64;
            l_root += self.ln[s as usize];
        }
        self.closeness[0] = c_root;
        self.log_phi[0] = l_root;

        let psi_root = self.max_child[0] as u64;
        let b_root = self.pow_sum[0];
        let d_root = self.degree[0];

        let mut best = [0usize; 5];
        let mut best_psi = psi_root;
        let mut best_c = c_root;
        let mut best_b = b_root;
        let mut best_d = d_root;
        let mut ahead = [0u32; 5];
        let tol = crate::centrality::RUMOR_TIE_TOLERANCE * n as f64;

        for u in 1..n {
            let p = parent[u] as usize;
            let s = size[u] as u64;
            let m = nn - s;
            self.depth[u] = self.depth[p] + 1;
            let deg = self.degree[u] + 1;
            self.degree[u] = deg;

            let psi = (self.max_child[u] as u64).max(m);
            if psi <= best_psi {
                best_psi = psi;
                best[JORDAN] = u;
            }
            ahead[JORDAN] += (psi <= psi_root) as u32;

            let c = self.closeness[p] + nn - 2 * s;
            self.closeness[u] = c;
            if c <= best_c {
                best_c = c;
                best[CLOSENESS] = u;
            }
            ahead[CLOSENESS] += (c <= c_root) as u32;

            let b = self.pow_sum[u] + self.pow(m);
            if b <= best_b {
                best_b = b;
                best[BETWEENNESS] = u;
            }
            ahead[BETWEENNESS] += (b <= b_root) as u32;

            if deg >= best_d {
                best_d = deg;
                best[DEGREE] = u;
            }
            ahead[DEGREE] += (deg >= d_root) as u32;

            let l = self.log_phi[p] + self.ln[m as usize] - self.ln[s as usize];
            self.log_phi[u] = l;
            let cmp = RumorComparator {
                log: &self.log_phi[..n],
                parent,
                size,
                depth: &self.depth[..n],
            };
            let vs_best = l - self.log_phi[best[RUMOR]];
            let beats_best = if vs_best < -tol {
                true
            } else if vs_best > tol {
                false
            } else {
                cmp.compare_exact(u, best[RUMOR]) != Ordering::Greater
            };
            if beats_best {
                best[RUMOR] = u;
            }
            let vs_root = l - l_root;
            let beats_root = if vs_root < -tol {
                true
            } else if vs_root > tol {
                false
            } else {
                cmp.compare_exact(u, 0) != Ordering::Greater
            };
            ahead[RUMOR] += beats_root as u32;
        }

        let mut snap = Snapshot::default();
        for k in 0..5 {
            snap.center[k] = best[k] as u32 + 1;
            snap.root_rank[k] = ahead[k] + 1;
        }
        snap
    }
}

fn reset<T: Copy>(buf: &mut Vec<T>, n: usize, value: T) {
    buf.clear();
    buf.resize(n, value);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::compute_profile;
    use crate::rng::RngStream;
    use crate::tree::{all_recursive_trees, grow_urrt, RecursiveTree, SubtreeSizes};

    fn check(tree: &RecursiveTree, kernel: &mut Kernel) {
        let sizes = SubtreeSizes::new(tree);
        let snap = kernel.evaluate(tree.parents(), sizes.as_slice());
        for (k, &m) in SLOTS.iter().enumerate() {
            let rep = compute_profile(tree, &sizes, m).unwrap().report();
            assert_eq!(snap.center[k], rep.center_index, "{m} center on {:?}", tree.parents());
            assert_eq!(
                snap.root_rank[k],
                rep.root_rank,
                "{m} root rank on {:?}",
                tree.parents()
            );
        }
    }

    #[test]
    fn agrees_with_sorted_profiles_exhaustively() {
        let mut kernel = Kernel::new(2);
        kernel.prepare(7).unwrap();
        for n in 1..=7 {
            for t in all_recursive_trees(n) {
                check(&t, &mut kernel);
            }
        }
    }

    #[test]
    fn agrees_with_sorted_profiles_on_random_trees() {
        let mut kernel = Kernel::new(2);
        kernel.prepare(3000).unwrap();
        for i in 0..60 {
            let n = 2 + (i * 47) % 3000;
            let t = grow_urrt(n, &mut RngStream::new(21, i as u64).rng()).unwrap();
            check(&t, &mut kernel);
        }
    }

    #[test]
    fn other_exponents() {
        let mut kernel = Kernel::new(3);
        kernel.prepare(500).unwrap();
        for i in 0..20 {
            let t = grow_urrt(500, &mut RngStream::new(22, i).rng()).unwrap();
            let sizes = SubtreeSizes::new(&t);
            let snap = kernel.evaluate(t.parents(), sizes.as_slice());
            let rep = compute_profile(&t, &sizes, Measure::BetweennessQ(3)).unwrap().report();
            assert_eq!(snap.center[BETWEENNESS], rep.center_index);
            assert_eq!(snap.root_rank[BETWEENNESS], rep.root_rank);
        }
        assert!(Kernel::new(40).prepare(1000).is_err());
    }
}

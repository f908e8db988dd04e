//! A recursive tree grown one vertex at a time, with its centers and root
//! ranks kept cheap to query.
//!
//! Subtree sizes and depths are updated along the root path of every new
//! vertex. The centroid and the degree center are tracked per insertion.
//! Root ranks are read off sublevel sets: Jordan, closeness and rumor scores
//! increase along every path leaving the centroid, so the vertices at least
//! as central as the root form a connected set around it. The betweenness
//! form `sum a_i^q` is at least `psi^q`, which confines its candidates to a
//! Jordan sublevel set as well. A search from the centroid therefore touches
//! only those sets and their boundary instead of the whole tree.

use std::cmp::Ordering;

use super::kernel::{Snapshot, BETWEENNESS, CLOSENESS, DEGREE, JORDAN, RUMOR};
use crate::centrality::{power_guard, RumorComparator};
use crate::error::Result;
use crate::tree::NO_PARENT;

const NONE: u32 = u32::MAX;
/// Relative log scores are short path sums, so this is far above rounding.
const RUMOR_TOLERANCE: f64 = 1e-9;

pub(crate) struct Growth {
    pub parent: Vec<u32>,
    pub size: Vec<u32>,
    depth: Vec<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    degree: Vec<u32>,
    /// `at_least[d]` counts vertices of degree at least `d`.
    at_least: Vec<u32>,
    centroid: usize,
    pub centroid_label: u32,
    degree_center: usize,
    q: u32,
    ln: Vec<f64>,
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<(u32, i64, f64)>,
}

impl Growth {
    /// Buffers for trees of up to `capacity` vertices with betweenness
    /// exponent `q`.
    pub fn new(capacity: usize, q: u32) -> Result<Self> {
        power_guard(capacity, q)?;
        let mut g = Self {
            parent: Vec::with_capacity(capacity),
            size: Vec::with_capacity(capacity),
            depth: Vec::with_capacity(capacity),
            first_child: Vec::with_capacity(capacity),
            next_sibling: Vec::with_capacity(capacity),
            degree: Vec::with_capacity(capacity),
            at_least: Vec::new(),
            centroid: 0,
            centroid_label: 1,
            degree_center: 0,
            q,
            ln: (0..=capacity).map(|k| (k as f64).ln()).collect(),
            mark: Vec::with_capacity(capacity),
            epoch: 0,
            stack: Vec::new(),
        };
        g.reset();
        Ok(g)
    }

    pub fn reset(&mut self) {
        self.parent.clear();
        self.size.clear();
        self.depth.clear();
        self.first_child.clear();
        self.next_sibling.clear();
        self.degree.clear();
        self.mark.clear();
        self.parent.push(NO_PARENT);
        self.size.push(1);
        self.depth.push(0);
        self.first_child.push(NONE);
        self.next_sibling.push(NONE);
        self.degree.push(0);
        self.mark.push(0);
        self.epoch = 0;
        self.at_least.clear();
        self.at_least.push(1);
        self.centroid = 0;
        self.centroid_label = 1;
        self.degree_center = 0;
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn degree_center_label(&self) -> u32 {
        self.degree_center as u32 + 1
    }

    /// Attaches a new vertex to `p` (0-based).
    pub fn insert(&mut self, p: usize) {
        let v = self.len();
        self.parent.push(p as u32);
        self.size.push(1);
        self.depth.push(self.depth[p] + 1);
        self.first_child.push(NONE);
        self.next_sibling.push(self.first_child[p]);
        self.first_child[p] = v as u32;
        self.mark.push(0);

        self.degree.push(1);
        self.bump_at_least(1);
        self.at_least[0] += 1;
        self.degree[p] += 1;
        self.bump_at_least(self.degree[p] as usize);

        let mut x = p as u32;
        while x != NO_PARENT {
            self.size[x as usize] += 1;
            x = self.parent[x as usize];
        }
        self.update_centroid();
        self.update_degree_center(p, v);
    }

    fn bump_at_least(&mut self, d: usize) {
        if self.at_least.len() <= d {
            self.at_least.resize(d + 1, 0);
        }
        self.at_least[d] += 1;
    }

    /// The centroid moves at most one edge per insertion; walking towards
    /// the heaviest component until none exceeds `n/2` covers that.
    fn update_centroid(&mut self) {
        let n = self.len() as u64;
        loop {
            let c = self.centroid;
            let (mut heavy, mut toward) = if c == 0 {
                (0, NONE)
            } else {
                (n - self.size[c] as u64, self.parent[c])
            };
            let mut ch = self.first_child[c];
            while ch != NONE {
                let s = self.size[ch as usize] as u64;
                if s > heavy {
                    heavy = s;
                    toward = ch;
                }
                ch = self.next_sibling[ch as usize];
            }
            if 2 * heavy > n {
                self.centroid = toward as usize;
                continue;
            }
            let other = if 2 * heavy == n { toward as usize } else { c };
            self.centroid_label = c.max(other) as u32 + 1;
            return;
        }
    }

    fn update_degree_center(&mut self, p: usize, v: usize) {
        let best = self.degree[self.degree_center];
        if self.degree[p] > best || (self.degree[p] == best && p > self.degree_center) {
            self.degree_center = p;
        }
        if self.degree[self.degree_center] <= 1 {
            self.degree_center = v;
        }
    }

    #[inline]
    fn pow(&self, s: u64) -> u64 {
        if self.q == 2 {
            s * s
        } else {
            s.pow(self.q)
        }
    }

    /// Centers and root ranks of all five slots, equal to what
    /// [`Kernel::evaluate`](super::kernel::Kernel::evaluate) returns on the
    /// same tree.
    pub fn snapshot(&mut self) -> Snapshot {
        let n = self.len();
        let nn = n as u64;
        let mut snap = Snapshot {
            center: [1; 5],
            root_rank: [1; 5],
        };
        if n == 1 {
            return snap;
        }

        let mut psi_root = 0u64;
        let mut b_root = 0u64;
        let mut ch = self.first_child[0];
        while ch != NONE {
            let s = self.size[ch as usize] as u64;
            psi_root = psi_root.max(s);
            b_root += self.pow(s);
            ch = self.next_sibling[ch as usize];
        }

        // Closeness and log-rumor scores relative to the centroid.
        let c = self.centroid;
        let mut d_root = 0i64;
        let mut l_root = 0f64;
        let mut x = c;
        while x != 0 {
            let s = self.size[x] as usize;
            d_root += 2 * s as i64 - n as i64;
            l_root += self.ln[s] - self.ln[n - s];
            x = self.parent[x] as usize;
        }

        let cmp = RumorComparator {
            log: &[],
            parent: &self.parent,
            size: &self.size,
            depth: &self.depth,
        };
        self.epoch += 1;
        let epoch = self.epoch;
        self.mark[c] = epoch;
        self.stack.clear();
        self.stack.push((c as u32, 0, 0.0));
        let mut count = [0u32; 5];
        let mut best_b = (u64::MAX, 0usize);

        while let Some((x, d, l)) = self.stack.pop() {
            let x = x as usize;
            let sx = self.size[x] as u64;
            let up = if x == 0 { 0 } else { nn - sx };
            let mut psi = up;
            let mut b = if x == 0 { 0 } else { self.pow(up) };
            let mut ch = self.first_child[x];
            while ch != NONE {
                let s = self.size[ch as usize] as u64;
                psi = psi.max(s);
                b += self.pow(s);
                ch = self.next_sibling[ch as usize];
            }

            let in_j = psi <= psi_root;
            let in_c = d <= d_root;
            let diff = l - l_root;
            let in_r = if diff < -RUMOR_TOLERANCE {
                true
            } else if diff > RUMOR_TOLERANCE {
                false
            } else {
                cmp.compare_exact(x, 0) != Ordering::Greater
            };
            count[JORDAN] += in_j as u32;
            count[CLOSENESS] += in_c as u32;
            count[RUMOR] += in_r as u32;
            count[BETWEENNESS] += (b <= b_root) as u32;
            if b < best_b.0 || (b == best_b.0 && x > best_b.1) {
                best_b = (b, x);
            }

            // Only members of a star-shaped set lead to further members.
            let in_psi_band = self.pow(psi) <= b_root;
            if !(in_j || in_c || in_r || in_psi_band) {
                continue;
            }
            if x != 0 {
                let y = self.parent[x] as usize;
                if self.mark[y] != epoch {
                    self.mark[y] = epoch;
                    let s = sx as usize;
                    self.stack
                        .push((y as u32, d + 2 * sx as i64 - nn as i64, l + self.ln[s] - self.ln[n - s]));
                }
            }
            let mut ch = self.first_child[x];
            while ch != NONE {
                let y = ch as usize;
                if self.mark[y] != epoch {
                    self.mark[y] = epoch;
                    let s = self.size[y] as usize;
                    self.stack
                        .push((ch, d + nn as i64 - 2 * s as i64, l + self.ln[n - s] - self.ln[s]));
                }
                ch = self.next_sibling[y];
            }
        }

        for k in [JORDAN, CLOSENESS, RUMOR] {
            snap.center[k] = self.centroid_label;
        }
        snap.center[BETWEENNESS] = best_b.1 as u32 + 1;
        snap.center[DEGREE] = self.degree_center_label();
        snap.root_rank[JORDAN] = count[JORDAN];
        snap.root_rank[CLOSENESS] = count[CLOSENESS];
        snap.root_rank[RUMOR] = count[RUMOR];
        snap.root_rank[BETWEENNESS] = count[BETWEENNESS];
        snap.root_rank[DEGREE] = self.at_least[self.degree[0] as usize];
        snap
    }
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::centrality::{compute_profile, Measure};
    use crate::experiments::kernel::Kernel;
    use crate::rng::RngStream;
    use crate::tree::{RecursiveTree, SubtreeSizes};

    #[test]
    fn trackers_match_full_recomputation_each_step() {
        let mut g = Growth::new(400, 2).unwrap();
        let mut rng = RngStream::new(8, 0).rng();
        for n in 2..=400usize {
            g.insert(rng.random_range(0..n - 1));
            let tree = RecursiveTree::from_parents(g.parent.clone()).unwrap();
            let sizes = SubtreeSizes::new(&tree);
            assert_eq!(sizes.as_slice(), &g.size[..]);
            assert_eq!(tree.depths(), g.depth);
            let j = compute_profile(&tree, &sizes, Measure::Jordan).unwrap().report();
            assert_eq!(g.centroid_label, j.center_index);
            let d = compute_profile(&tree, &sizes, Measure::Degree).unwrap().report();
            assert_eq!(g.degree_center_label(), d.center_index);
        }
    }

    fn agree_with_kernel(q: u32, seed: u64, n_max: usize, trajectories: u64) {
        let mut g = Growth::new(n_max, q).unwrap();
        let mut kernel = Kernel::new(q);
        kernel.prepare(n_max).unwrap();
        for id in 0..trajectories {
            g.reset();
            assert_eq!(g.snapshot(), kernel.evaluate(&g.parent, &g.size));
            let mut rng = RngStream::new(seed, id).rng();
            for n in 2..=n_max {
                g.insert(rng.random_range(0..n - 1));
                let local = g.snapshot();
                let full = kernel.evaluate(&g.parent, &g.size);
                assert_eq!(local, full, "trajectory {id}, n = {n}");
            }
        }
    }

    #[test]
    fn snapshot_matches_kernel_every_step() {
        agree_with_kernel(2, 41, 1500, 12);
    }

    #[test]
    fn snapshot_matches_kernel_for_other_exponents() {
        agree_with_kernel(3, 42, 600, 6);
        agree_with_kernel(5, 43, 300, 6);
    }

    #[test]
    fn small_trees_exhaustively() {
        // every insertion order of every tree up to 7 vertices
        let mut kernel = Kernel::new(2);
        kernel.prepare(7).unwrap();
        let mut g = Growth::new(7, 2).unwrap();
        for n in 1..=7 {
            for t in crate::tree::all_recursive_trees(n) {
                g.reset();
                for v in 1..n {
                    g.insert(t.parent(v).unwrap());
                }
                assert_eq!(g.snapshot(), kernel.evaluate(&g.parent, &g.size), "{:?}", t.parents());
            }
        }
    }
}

//! Rumor centrality in log space with an exact tie check.
//!
//! `phi(v)` is a product of `n - 1` subtree sizes and overflows any fixed
//! width, so scores are kept as `ln phi`. Crossing the edge from `p` to its
//! child `u` multiplies `phi` by `(n - size[u]) / size[u]`; when two log
//! scores are too close to call, that ratio is multiplied out exactly along
//! the path between the two vertices.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::tree::{RecursiveTree, SubtreeSizes};

/// Log scores closer than `TIE_TOLERANCE_PER_VERTEX * n` are re-compared
/// exactly.
pub(crate) const TIE_TOLERANCE_PER_VERTEX: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct RumorScores {
    /// `ln phi(v)`; `0.0` for the one-vertex tree.
    pub log: Vec<f64>,
    parent: Vec<u32>,
    size: Vec<u32>,
    depth: Vec<u32>,
}

pub fn rumor_scores(tree: &RecursiveTree, sizes: &SubtreeSizes) -> RumorScores {
    let parent = tree.parents();
    let size = sizes.as_slice();
    let n = parent.len();
    let mut log = vec![0f64; n];
    log[0] = size[1..].iter().map(|&s| (s as f64).ln()).sum();
    for u in 1..n {
        let p = parent[u] as usize;
        let s = size[u] as f64;
        log[u] = log[p] + ((n as f64) - s).ln() - s.ln();
    }
    RumorScores {
        log,
        parent: parent.to_vec(),
        size: size.to_vec(),
        depth: tree.depths(),
    }
}

impl RumorScores {
    pub(crate) fn comparator(&self) -> RumorComparator<'_> {
        RumorComparator {
            log: &self.log,
            parent: &self.parent,
            size: &self.size,
            depth: &self.depth,
        }
    }

    /// Orders `phi(a)` against `phi(b)`; `Less` means `a` is more central.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.comparator().compare(a, b)
    }

    /// Exact comparison through the telescoping ratio, ignoring log scores.
    pub fn compare_exact(&self, a: usize, b: usize) -> Ordering {
        self.comparator().compare_exact(a, b)
    }
}

#[derive(Clone, Copy)]
pub(crate) struct RumorComparator<'a> {
    pub log: &'a [f64],
    pub parent: &'a [u32],
    pub size: &'a [u32],
    pub depth: &'a [u32],
}

impl RumorComparator<'_> {
    #[inline]
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        let n = self.log.len() as f64;
        let d = self.log[a] - self.log[b];
        if d > TIE_TOLERANCE_PER_VERTEX * n {
            Ordering::Greater
        } else if d < -TIE_TOLERANCE_PER_VERTEX * n {
            Ordering::Less
        } else {
            self.compare_exact(a, b)
        }
    }

    /// Uses only the tree arrays; `log` may be empty.
    pub fn compare_exact(&self, mut a: usize, mut b: usize) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let n = self.parent.len() as u64;
        // phi(b) / phi(a) = num / den
        let mut num = Product::one();
        let mut den = Product::one();
        while self.depth[a] > self.depth[b] {
            let s = self.size[a] as u64;
            num.mul(s);
            den.mul(n - s);
            a = self.parent[a] as usize;
        }
        while self.depth[b] > self.depth[a] {
            let s = self.size[b] as u64;
            num.mul(n - s);
            den.mul(s);
            b = self.parent[b] as usize;
        }
        while a != b {
            let sa = self.size[a] as u64;
            let sb = self.size[b] as u64;
            num.mul(sa);
            den.mul(n - sa);
            num.mul(n - sb);
            den.mul(sb);
            a = self.parent[a] as usize;
            b = self.parent[b] as usize;
        }
        // phi(a) < phi(b) iff num > den
        den.cmp(&num)
    }
}

/// Integer product that stays in a `u128` until it overflows.
struct Product {
    small: u128,
    big: Option<BigUint>,
}

impl Product {
    fn one() -> Self {
        Self { small: 1, big: None }
    }

    #[inline]
    fn mul(&mut self, f: u64) {
        match self.small.checked_mul(f as u128) {
            Some(x) if self.big.is_none() => self.small = x,
            _ => {
                let big = self.big.take().unwrap_or_else(|| BigUint::from(self.small));
                self.big = Some(big * f);
            }
        }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.big, &other.big) {
            (None, None) => self.small.cmp(&other.small),
            (Some(a), None) => a.cmp(&BigUint::from(other.small)),
            (None, Some(b)) => BigUint::from(self.small).cmp(b),
            (Some(a), Some(b)) => a.cmp(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scores(labels: &[u32]) -> RumorScores {
        let t = RecursiveTree::from_parent_labels(labels).unwrap();
        let s = SubtreeSizes::new(&t);
        rumor_scores(&t, &s)
    }

    fn phi(r: &RumorScores) -> Vec<f64> {
        r.log.iter().map(|l| l.exp()).collect()
    }

    #[test]
    fn small_examples() {
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9);
        assert!(close(&phi(&scores(&[1, 2])), &[2.0, 1.0, 2.0]));
        assert!(close(&phi(&scores(&[1, 1, 3])), &[2.0, 6.0, 2.0, 6.0]));
        assert!(close(&phi(&scores(&[1, 1, 1])), &[1.0, 3.0, 3.0, 3.0]));
        let single = rumor_scores(
            &RecursiveTree::singleton(),
            &SubtreeSizes::new(&RecursiveTree::singleton()),
        );
        assert_eq!(single.log, [0.0]);
    }

    #[test]
    fn exact_ties_detected() {
        let r = scores(&[1, 1, 3]);
        assert_eq!(r.compare(0, 2), Ordering::Equal);
        assert_eq!(r.compare(1, 3), Ordering::Equal);
        assert_eq!(r.compare(0, 1), Ordering::Less);
        assert_eq!(r.compare_exact(3, 2), Ordering::Greater);
    }

    #[test]
    fn product_spills_to_bigint() {
        let mut a = Product::one();
        let mut b = Product::one();
        for _ in 0..10 {
            a.mul(u64::MAX);
        }
        for _ in 0..9 {
            b.mul(u64::MAX);
        }
        assert!(a.big.is_some());
        assert_eq!(a.cmp(&b), Ordering::Greater);
        b.mul(u64::MAX);
        assert_eq!(a.cmp(&b), Ordering::Equal);
        assert_eq!(Product::one().cmp(&b), Ordering::Less);
    }
}

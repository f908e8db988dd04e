use crate::error::{Error, Result};
use crate::tree::{RecursiveTree, SubtreeSizes};

/// `psi[v] = max(n - size[v], largest child subtree)`.
pub fn jordan_scores(tree: &RecursiveTree, sizes: &SubtreeSizes) -> Vec<u64> {
    let parent = tree.parents();
    let size = sizes.as_slice();
    let n = parent.len();
    let mut max_child = vec![0u64; n];
    for v in (1..n).rev() {
        let p = parent[v] as usize;
        max_child[p] = max_child[p].max(size[v] as u64);
    }
    for v in 1..n {
        max_child[v] = max_child[v].max((n - size[v] as usize) as u64);
    }
    max_child
}

/// Sum of distances, by rerooting `C[u] = C[p] + n - 2 size[u]`.
pub fn closeness_scores(tree: &RecursiveTree, sizes: &SubtreeSizes) -> Vec<u64> {
    let parent = tree.parents();
    let size = sizes.as_slice();
    let n = parent.len();
    let mut c = vec![0u64; n];
    // Distance sum from the root equals the sum of all non-root subtree sizes.
    c[0] = size[1..].iter().map(|&s| s as u64).sum();
    for u in 1..n {
        let p = parent[u] as usize;
        c[u] = c[p] + n as u64 - 2 * size[u] as u64;
    }
    c
}

pub fn betweenness_sq_scores(tree: &RecursiveTree, sizes: &SubtreeSizes) -> Result<Vec<u64>> {
    betweenness_q_scores(tree, sizes, 2)
}

/// Sum over neighbours `u` of `v` of the component size behind `u`, raised to
/// the `q`-th power.
pub fn betweenness_q_scores(tree: &RecursiveTree, sizes: &SubtreeSizes, q: u32) -> Result<Vec<u64>> {
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    let parent = tree.parents();
    let size = sizes.as_slice();
    let n = parent.len();
    power_guard(n, q)?;
    let mut b = vec![0u64; n];
    for v in (1..n).rev() {
        b[parent[v] as usize] += (size[v] as u64).pow(q);
    }
    for v in 1..n {
        b[v] += ((n - size[v] as usize) as u64).pow(q);
    }
    Ok(b)
}

/// Rejects `n` when `n^q` does not fit in 64 bits; every component sum is
/// bounded by `(n-1)^q`.
pub(crate) fn power_guard(n: usize, q: u32) -> Result<()> {
    (n as u64)
        .checked_pow(q)
        .map(|_| ())
        .ok_or_else(|| Error::Overflow(format!("n^q overflows 64 bits for n = {n}, q = {q}")))
}

/// Unordered pairs separated by `v`: `((n-1)^2 - sum a_i^2) / 2` over the
/// component sizes `a_i` of `T \ v`.
pub fn betweenness_pairs_scores(tree: &RecursiveTree, sizes: &SubtreeSizes) -> Result<Vec<u64>> {
    let n = tree.len();
    let mut b = betweenness_q_scores(tree, sizes, 2)?;
    let total = ((n - 1) as u64).pow(2);
    for x in b.iter_mut() {
        *x = (total - *x) / 2;
    }
    Ok(b)
}

pub fn degree_scores(tree: &RecursiveTree) -> Vec<u64> {
    tree.degrees().into_iter().map(u64::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::RecursiveTree;

    fn trees() -> [(RecursiveTree, SubtreeSizes); 3] {
        let t = |l: &[u32]| {
            let t = RecursiveTree::from_parent_labels(l).unwrap();
            let s = SubtreeSizes::new(&t);
            (t, s)
        };
        // P3, T4, S4
        [t(&[1, 2]), t(&[1, 1, 3]), t(&[1, 1, 1])]
    }

    #[test]
    fn jordan_examples() {
        let [p3, t4, s4] = trees();
        assert_eq!(jordan_scores(&p3.0, &p3.1), [2, 1, 2]);
        assert_eq!(jordan_scores(&t4.0, &t4.1), [2, 3, 2, 3]);
        assert_eq!(jordan_scores(&s4.0, &s4.1), [1, 3, 3, 3]);
    }

    #[test]
    fn closeness_examples() {
        let [p3, t4, s4] = trees();
        assert_eq!(closeness_scores(&p3.0, &p3.1), [3, 2, 3]);
        assert_eq!(closeness_scores(&t4.0, &t4.1), [4, 6, 4, 6]);
        assert_eq!(closeness_scores(&s4.0, &s4.1), [3, 5, 5, 5]);
    }

    #[test]
    fn betweenness_examples() {
        let [p3, t4, s4] = trees();
        assert_eq!(betweenness_sq_scores(&t4.0, &t4.1).unwrap(), [5, 9, 5, 9]);
        assert_eq!(betweenness_sq_scores(&s4.0, &s4.1).unwrap(), [3, 9, 9, 9]);
        assert_eq!(betweenness_q_scores(&p3.0, &p3.1, 3).unwrap(), [8, 2, 8]);
        assert_eq!(betweenness_pairs_scores(&t4.0, &t4.1).unwrap(), [2, 0, 2, 0]);
        assert_eq!(betweenness_pairs_scores(&s4.0, &s4.1).unwrap(), [3, 0, 0, 0]);
        assert_eq!(betweenness_pairs_scores(&p3.0, &p3.1).unwrap(), [0, 1, 0]);
    }

    #[test]
    fn degree_examples() {
        let [p3, t4, s4] = trees();
        assert_eq!(degree_scores(&s4.0), [3, 1, 1, 1]);
        assert_eq!(degree_scores(&p3.0), [1, 2, 1]);
        assert_eq!(degree_scores(&t4.0), [2, 1, 2, 1]);
    }

    #[test]
    fn singleton_scores_are_zero() {
        let t = RecursiveTree::singleton();
        let s = SubtreeSizes::new(&t);
        assert_eq!(jordan_scores(&t, &s), [0]);
        assert_eq!(closeness_scores(&t, &s), [0]);
        assert_eq!(betweenness_sq_scores(&t, &s).unwrap(), [0]);
        assert_eq!(betweenness_pairs_scores(&t, &s).unwrap(), [0]);
        assert_eq!(degree_scores(&t), [0]);
    }

    #[test]
    fn overflow_guard() {
        assert!(power_guard(1 << 16, 4).is_err());
        assert!(power_guard(1 << 15, 4).is_ok());
        assert!(matches!(power_guard(100, 20), Err(Error::Overflow(_))));
        let [p3, ..] = trees();
        assert!(betweenness_q_scores(&p3.0, &p3.1, 1).is_err());
    }
}

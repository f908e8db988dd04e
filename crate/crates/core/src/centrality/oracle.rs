//! Brute-force reference scores.
//!
//! Every routine here works from an adjacency list and explicit graph
//! searches, never from rooted subtree sizes, so it shares no code path with
//! the rerooting formulas it is used to check.

use num_bigint::BigUint;

use super::measure::Measure;
use crate::error::{Error, Result};
use crate::tree::RecursiveTree;

/// Largest tree accepted by the quadratic and cubic oracles.
pub const ORACLE_MAX_N: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleScores {
    Integer(Vec<u64>),
    Rumor(Vec<BigUint>),
}

pub fn oracle_scores(tree: &RecursiveTree, measure: Measure) -> Result<OracleScores> {
    let n = tree.len();
    if n > ORACLE_MAX_N {
        return Err(Error::invalid(format!(
            "oracle limited to n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    let adj = adjacency(tree);
    Ok(match measure {
        Measure::Jordan => OracleScores::Integer(
            (0..n)
                .map(|v| components_without(&adj, v).into_iter().max().unwrap_or(0))
                .collect(),
        ),
        Measure::Closeness => {
            OracleScores::Integer((0..n).map(|v| bfs(&adj, v).0.iter().map(|&d| d as u64).sum()).collect())
        }
        Measure::Rumor => OracleScores::Rumor((0..n).map(|v| rumor_product(&adj, v)).collect()),
        Measure::BetweennessSq => power_sums(&adj, 2)?,
        Measure::BetweennessQ(q) => power_sums(&adj, q)?,
        Measure::BetweennessPairs => OracleScores::Integer(pair_counts(&adj)),
        Measure::Degree => OracleScores::Integer(adj.iter().map(|a| a.len() as u64).collect()),
    })
}

fn adjacency(tree: &RecursiveTree) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); tree.len()];
    for v in 1..tree.len() {
        let p = tree.parent(v).unwrap();
        adj[v].push(p);
        adj[p].push(v);
    }
    adj
}

/// Distances and BFS parents from `src`.
fn bfs(adj: &[Vec<usize>], src: usize) -> (Vec<u32>, Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut dist = vec![u32::MAX; n];
    let mut from = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    dist[src] = 0;
    order.push(src);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                from[y] = x;
                order.push(y);
            }
        }
    }
    (dist, from, order)
}

/// Sizes of the connected components left after deleting `v`.
fn components_without(adj: &[Vec<usize>], v: usize) -> Vec<u64> {
    let n = adj.len();
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut sizes = Vec::new();
    for &start in &adj[v] {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 0u64;
        while let Some(x) = stack.pop() {
            count += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        sizes.push(count);
    }
    sizes
}

fn power_sums(adj: &[Vec<usize>], q: u32) -> Result<OracleScores> {
    let n = adj.len() as u64;
    n.checked_pow(q)
        .ok_or_else(|| Error::Overflow(format!("n^q overflows for n = {n}, q = {q}")))?;
    Ok(OracleScores::Integer(
        (0..adj.len())
            .map(|v| components_without(adj, v).iter().map(|c| c.pow(q)).sum())
            .collect(),
    ))
}

/// Product of subtree sizes with the tree hung from `v`, excluding `v`.
fn rumor_product(adj: &[Vec<usize>], v: usize) -> BigUint {
    let (_, from, order) = bfs(adj, v);
    let mut size = vec![1u64; adj.len()];
    for &x in order.iter().skip(1).rev() {
        size[from[x]] += size[x];
    }
    let mut acc = BigUint::from(1u32);
    let mut chunk = 1u64;
    for &x in order.iter().skip(1) {
        match chunk.checked_mul(size[x]) {
            Some(c) => chunk = c,
            None => {
                acc *= chunk;
                chunk = size[x];
            }
        }
    }
    acc * chunk
}

/// For every unordered pair `{s, t}`, walks the path and credits its
/// interior vertices.
fn pair_counts(adj: &[Vec<usize>]) -> Vec<u64> {
    let n = adj.len();
    let mut count = vec![0u64; n];
    for s in 0..n {
        let (_, from, _) = bfs(adj, s);
        for t in (s + 1)..n {
            let mut x = from[t];
            while x != s {
                count[x] += 1;
                x = from[x];
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(o: OracleScores) -> Vec<u64> {
        match o {
            OracleScores::Integer(v) => v,
            OracleScores::Rumor(_) => panic!("expected integer scores"),
        }
    }

    #[test]
    fn t4_values() {
        let t = RecursiveTree::from_parent_labels(&[1, 1, 3]).unwrap();
        assert_eq!(ints(oracle_scores(&t, Measure::Jordan).unwrap()), [2, 3, 2, 3]);
        assert_eq!(ints(oracle_scores(&t, Measure::Closeness).unwrap()), [4, 6, 4, 6]);
        assert_eq!(ints(oracle_scores(&t, Measure::BetweennessSq).unwrap()), [5, 9, 5, 9]);
        assert_eq!(
            ints(oracle_scores(&t, Measure::BetweennessPairs).unwrap()),
            [2, 0, 2, 0]
        );
        assert_eq!(ints(oracle_scores(&t, Measure::Degree).unwrap()), [2, 1, 2, 1]);
        let OracleScores::Rumor(r) = oracle_scores(&t, Measure::Rumor).unwrap() else {
            panic!()
        };
        let r: Vec<u64> = r.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(r, [2, 6, 2, 6]);
    }

    #[test]
    fn p3_values() {
        let t = RecursiveTree::from_parent_labels(&[1, 2]).unwrap();
        assert_eq!(ints(oracle_scores(&t, Measure::Jordan).unwrap()), [2, 1, 2]);
        assert_eq!(ints(oracle_scores(&t, Measure::Closeness).unwrap()), [3, 2, 3]);
        assert_eq!(ints(oracle_scores(&t, Measure::BetweennessQ(3)).unwrap()), [8, 2, 8]);
        assert_eq!(ints(oracle_scores(&t, Measure::BetweennessPairs).unwrap()), [0, 1, 0]);
    }

    #[test]
    fn size_guard() {
        let t = RecursiveTree::from_parents(
            std::iter::once(crate::tree::NO_PARENT)
                .chain((1..=ORACLE_MAX_N as u32).map(|v| v - 1))
                .collect(),
        )
        .unwrap();
        assert!(oracle_scores(&t, Measure::Jordan).is_err());
    }
}

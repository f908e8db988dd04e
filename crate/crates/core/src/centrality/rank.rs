use std::cmp::Ordering;

use super::measure::{Direction, Measure};
use super::rumor::{rumor_scores, RumorScores};
use super::scores::{betweenness_pairs_scores, betweenness_q_scores, closeness_scores, degree_scores, jordan_scores};
use crate::error::{Error, Result};
use crate::tree::{RecursiveTree, SubtreeSizes};

#[derive(Clone, Debug)]
pub enum ScoreVec {
    Integer(Vec<u64>),
    Rumor(RumorScores),
}

/// Scores of one measure together with the tie-broken ranking.
#[derive(Clone, Debug)]
pub struct CentralityProfile {
    pub measure: Measure,
    pub scores: ScoreVec,
    /// `rank[v]` is the 1-based position of vertex `v`; a permutation of `1..=n`.
    pub rank: Vec<u32>,
}

/// Center and root rank of one profile. Labels are 1-based arrival times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    /// Label of the rank-1 vertex.
    pub center_index: u32,
    /// Rank of the root.
    pub root_rank: u32,
    /// Labels sharing the best raw score, ascending.
    pub tied_center_set: Vec<u32>,
}

impl CentralityProfile {
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    /// `Less` when `a` is strictly more central than `b`, `Equal` on a raw tie.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        compare_scores(&self.scores, self.measure.direction(), a, b)
    }

    pub fn report(&self) -> CenterReport {
        let center = self.rank.iter().position(|&r| r == 1).expect("rank is a permutation");
        let tied_center_set = (0..self.len())
            .filter(|&v| self.compare(v, center) == Ordering::Equal)
            .map(|v| v as u32 + 1)
            .collect();
        CenterReport {
            center_index: center as u32 + 1,
            root_rank: self.rank[0],
            tied_center_set,
        }
    }

    /// Vertices ranked `1..=k`, by label.
    pub fn confidence_set(&self, k: usize) -> Result<Vec<u32>> {
        confidence_set(self, k)
    }
}

fn compare_scores(scores: &ScoreVec, dir: Direction, a: usize, b: usize) -> Ordering {
    match scores {
        ScoreVec::Integer(s) => match dir {
            Direction::SmallerIsCentral => s[a].cmp(&s[b]),
            Direction::LargerIsCentral => s[b].cmp(&s[a]),
        },
        ScoreVec::Rumor(r) => r.compare(a, b),
    }
}

pub fn compute_profile(tree: &RecursiveTree, sizes: &SubtreeSizes, measure: Measure) -> Result<CentralityProfile> {
    let scores = match measure {
        Measure::Jordan => ScoreVec::Integer(jordan_scores(tree, sizes)),
        Measure::Closeness => ScoreVec::Integer(closeness_scores(tree, sizes)),
        Measure::Rumor => ScoreVec::Rumor(rumor_scores(tree, sizes)),
        Measure::BetweennessSq => ScoreVec::Integer(betweenness_q_scores(tree, sizes, 2)?),
        Measure::BetweennessQ(q) => ScoreVec::Integer(betweenness_q_scores(tree, sizes, q)?),
        Measure::BetweennessPairs => ScoreVec::Integer(betweenness_pairs_scores(tree, sizes)?),
        Measure::Degree => ScoreVec::Integer(degree_scores(tree)),
    };
    let dir = measure.direction();
    let n = tree.len();
    let rank = match &scores {
        ScoreVec::Integer(s) => rank_integer(s, dir),
        ScoreVec::Rumor(r) => {
            let cmp = r.comparator();
            rank_by(n, |a, b| cmp.compare(a, b))
        }
    };
    Ok(CentralityProfile { measure, scores, rank })
}

/// Ranks vertices with a single sort on (centrality, label descending).
/// `cmp(a, b)` returns `Less` when `a` is strictly more central.
pub fn rank_by<F>(n: usize, cmp: F) -> Vec<u32>
where
    F: Fn(usize, usize) -> Ordering,
{
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| cmp(a as usize, b as usize).then(b.cmp(&a)));
    ranks_from_order(&order)
}

fn rank_integer(scores: &[u64], dir: Direction) -> Vec<u32> {
    let mut order: Vec<u32> = (0..scores.len() as u32).collect();
    match dir {
        Direction::SmallerIsCentral => order.sort_unstable_by_key(|&v| (scores[v as usize], std::cmp::Reverse(v))),
        Direction::LargerIsCentral => {
            order.sort_unstable_by_key(|&v| (std::cmp::Reverse(scores[v as usize]), std::cmp::Reverse(v)))
        }
    }
    ranks_from_order(&order)
}

fn ranks_from_order(order: &[u32]) -> Vec<u32> {
    let mut rank = vec![0u32; order.len()];
    for (i, &v) in order.iter().enumerate() {
        rank[v as usize] = i as u32 + 1;
    }
    rank
}

/// Center label and root rank in one linear scan, without sorting.
pub fn center_and_root_rank<F>(n: usize, cmp: F) -> (u32, u32)
where
    F: Fn(usize, usize) -> Ordering,
{
    let mut best = 0usize;
    let mut ahead_of_root = 0u32;
    for v in 1..n {
        if cmp(v, best) != Ordering::Greater {
            best = v;
        }
        // Ties with the root go to the later arrival.
        if cmp(v, 0) != Ordering::Greater {
            ahead_of_root += 1;
        }
    }
    (best as u32 + 1, ahead_of_root + 1)
}

/// The `k` top-ranked vertices as ascending labels.
pub fn confidence_set(profile: &CentralityProfile, k: usize) -> Result<Vec<u32>> {
    if k == 0 || k > profile.len() {
        return Err(Error::invalid(format!("K must lie in 1..={}, got {k}", profile.len())));
    }
    Ok(profile
        .rank
        .iter()
        .enumerate()
        .filter(|(_, &r)| r as usize <= k)
        .map(|(v, _)| v as u32 + 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(labels: &[u32], m: Measure) -> CentralityProfile {
        let t = RecursiveTree::from_parent_labels(labels).unwrap();
        let s = SubtreeSizes::new(&t);
        compute_profile(&t, &s, m).unwrap()
    }

    #[test]
    fn t4_jordan_rank() {
        let p = profile(&[1, 1, 3], Measure::Jordan);
        assert_eq!(p.rank, [2, 4, 1, 3]);
        let r = p.report();
        assert_eq!(r.center_index, 3);
        assert_eq!(r.root_rank, 2);
        assert_eq!(r.tied_center_set, [1, 3]);
    }

    #[test]
    fn t4_rumor_and_degree_centers() {
        let r = profile(&[1, 1, 3], Measure::Rumor).report();
        assert_eq!(r.tied_center_set, [1, 3]);
        assert_eq!(r.center_index, 3);
        assert_eq!(profile(&[1, 1, 3], Measure::Degree).report().center_index, 3);
    }

    #[test]
    fn singleton_rank() {
        for m in Measure::STANDARD {
            let p = profile(&[], m);
            assert_eq!(p.rank, [1]);
            let r = p.report();
            assert_eq!((r.center_index, r.root_rank), (1, 1));
        }
    }

    #[test]
    fn star_closeness_rank() {
        let p = profile(&[1, 1, 1], Measure::Closeness);
        assert_eq!(p.rank, [1, 4, 3, 2]);
        let r = p.report();
        assert_eq!((r.center_index, r.root_rank), (1, 1));
    }

    #[test]
    fn confidence_sets() {
        let p = profile(&[1, 1, 3], Measure::Jordan);
        assert_eq!(confidence_set(&p, 1).unwrap(), [3]);
        assert_eq!(confidence_set(&p, 2).unwrap(), [1, 3]);
        assert_eq!(confidence_set(&p, 4).unwrap(), [1, 2, 3, 4]);
        assert!(confidence_set(&p, 0).is_err());
        assert!(confidence_set(&p, 5).is_err());
    }

    #[test]
    fn linear_scan_matches_sort() {
        let p = profile(&[1, 1, 3, 2, 2, 5, 1], Measure::Closeness);
        let (c, r) = center_and_root_rank(p.len(), |a, b| p.compare(a, b));
        let rep = p.report();
        assert_eq!((c, r), (rep.center_index, rep.root_rank));
    }
}

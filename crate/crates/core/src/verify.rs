//! Exhaustive agreement check between the fast scores and the oracles.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::centrality::oracle::{oracle_scores, OracleScores};
use crate::centrality::{compute_profile, rank_by, CentralityProfile, Measure, ScoreVec};
use crate::error::Result;
use crate::tree::{all_recursive_trees, RecursiveTree, SubtreeSizes};

/// Measures checked against the oracles, in report order.
pub const VERIFIED: [Measure; 7] = [
    Measure::Jordan,
    Measure::Closeness,
    Measure::Rumor,
    Measure::BetweennessSq,
    Measure::BetweennessPairs,
    Measure::BetweennessQ(3),
    Measure::Degree,
];

/// Deliberate corruption of the fast path, used to prove the checker can
/// fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Adds one to the last vertex's closeness score.
    Closeness,
    /// Swaps the ranks of the two top-ranked vertices under the pairs form.
    PairsRank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub parents: Vec<u32>,
    pub measure: Measure,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    /// `(n, trees checked)` for every size.
    pub counts: Vec<(usize, u64)>,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.counts
            .iter()
            .map(|&(n, c)| {
                let bad = self.mismatches.iter().any(|m| m.n == n);
                let verdict = if bad { "MISMATCH" } else { "all measures agree" };
                format!("{c} trees at n={n}: {verdict}")
            })
            .collect()
    }
}

/// Checks every recursive tree with `1..=max_n` vertices. Mismatches are
/// collected rather than aborting, up to a cap of 100.
pub fn verify_exhaustive(max_n: usize, fault: Fault) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for n in 1..=max_n {
        let mut count = 0u64;
        for tree in all_recursive_trees(n) {
            count += 1;
            if report.mismatches.len() < 100 {
                check_tree(&tree, fault, &mut report.mismatches)?;
            }
        }
        report.counts.push((n, count));
    }
    Ok(report)
}

/// Compares every measure on one tree, appending any disagreement.
pub fn check_tree(tree: &RecursiveTree, fault: Fault, out: &mut Vec<Mismatch>) -> Result<()> {
    let sizes = SubtreeSizes::new(tree);
    let mut push = |measure, detail: String| {
        out.push(Mismatch {
            n: tree.len(),
            parents: tree.parents().to_vec(),
            measure,
            detail,
        })
    };
    let mut profiles = Vec::with_capacity(VERIFIED.len());
    for m in VERIFIED {
        let mut p = compute_profile(tree, &sizes, m)?;
        inject(&mut p, fault);
        let oracle = oracle_scores(tree, m)?;
        if let Some(d) = compare_to_oracle(&p, &oracle) {
            push(m, d);
        }
        profiles.push(p);
    }
    let sq = &profiles[3];
    let pairs = &profiles[4];
    if sq.rank != pairs.rank {
        push(
            Measure::BetweennessPairs,
            format!("rank {:?} differs from squared-form rank {:?}", pairs.rank, sq.rank),
        );
    }
    Ok(())
}

fn inject(p: &mut CentralityProfile, fault: Fault) {
    match (fault, p.measure, &mut p.scores) {
        (Fault::Closeness, Measure::Closeness, ScoreVec::Integer(s)) => {
            if let Some(last) = s.last_mut() {
                *last += 1;
            }
        }
        (Fault::PairsRank, Measure::BetweennessPairs, _) if p.rank.len() >= 2 => {
            let a = p.rank.iter().position(|&r| r == 1).unwrap();
            let b = p.rank.iter().position(|&r| r == 2).unwrap();
            p.rank.swap(a, b);
        }
        _ => {}
    }
}

/// Scores must match exactly, and the ranking must equal the one induced by
/// the oracle scores under the same tie rule.
fn compare_to_oracle(p: &CentralityProfile, oracle: &OracleScores) -> Option<String> {
    let n = p.len();
    let smaller = p.measure.direction() == crate::centrality::Direction::SmallerIsCentral;
    let expected_rank = match (oracle, &p.scores) {
        (OracleScores::Integer(o), ScoreVec::Integer(s)) => {
            if o != s {
                return Some(format!("scores {s:?}, oracle {o:?}"));
            }
            rank_by(n, |a, b| if smaller { o[a].cmp(&o[b]) } else { o[b].cmp(&o[a]) })
        }
        (OracleScores::Rumor(o), ScoreVec::Rumor(r)) => {
            for a in 0..n {
                for b in 0..n {
                    let exact: Ordering = o[a].cmp(&o[b]);
                    if r.compare(a, b) != exact {
                        return Some(format!("rumor order of {a} vs {b} disagrees with oracle"));
                    }
                }
            }
            for (v, phi) in o.iter().enumerate() {
                let approx = r.log[v];
                let exact = ln_big(phi);
                if (approx - exact).abs() > 1e-9 * exact.abs().max(1.0) {
                    return Some(format!("log phi[{v}] = {approx}, oracle {exact}"));
                }
            }
            rank_by(n, |a, b| o[a].cmp(&o[b]))
        }
        _ => return Some("score kind differs from oracle".into()),
    };
    (expected_rank != p.rank).then(|| format!("rank {:?}, oracle rank {expected_rank:?}", p.rank))
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        let f: f64 = x.to_string().parse().unwrap();
        f.ln()
    } else {
        let shift = bits - 64;
        let top: f64 = (x >> shift).to_string().parse().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

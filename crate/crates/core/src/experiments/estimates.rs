//! Monte Carlo estimators over independent trees.

use std::time::Instant;

use super::config::{ExperimentConfig, ExperimentKind};
use super::kernel::{slot_of, Kernel, Snapshot};
use super::parallel::map_indexed;
use super::persistence::run_persistence;
use super::result::{ExperimentResult, Record};
use super::stats::{ks_two_sample, median_with_stderr, proportion, IntMoments};
use crate::centrality::Measure;
use crate::error::Result;
use crate::rng::RngStream;
use crate::tree::{fill_urrt, subtree_sizes_into};
use crate::urns::{polya_diagonal_hit_estimate, sample_dickman, HoppeUrn};

/// Stream family tags, kept apart from tree sizes used as families.
const DICKMAN_FAMILY: u64 = u64::MAX - 1;
const HOPPE_FAMILY: u64 = u64::MAX - 2;
const DICKMAN_BLOCK: usize = 10_000;

/// Per-replicate snapshots of `reps` independent trees on `n` vertices.
#[derive(Clone, Debug)]
pub struct ReplicateTable {
    pub n: usize,
    pub rows: Vec<Snapshot>,
}

impl ReplicateTable {
    pub fn reps(&self) -> u64 {
        self.rows.len() as u64
    }

    pub fn root_ranks(&self, measure: Measure) -> impl Iterator<Item = u32> + '_ {
        let k = slot_of(measure);
        self.rows.iter().map(move |s| s.root_rank[k])
    }

    pub fn centers(&self, measure: Measure) -> impl Iterator<Item = u32> + '_ {
        let k = slot_of(measure);
        self.rows.iter().map(move |s| s.center[k])
    }
}

/// Replicate `i` of size `n` draws from stream `(seed, n, i)`, so tables for
/// different `n` are independent and any prefix of replicates is stable.
pub fn simulate(n: usize, reps: usize, seed: u64, q: u32, workers: usize) -> Result<ReplicateTable> {
    Kernel::new(q).prepare(n)?;
    let rows = map_indexed(
        reps,
        workers,
        || {
            let mut k = Kernel::new(q);
            k.prepare(n).expect("checked above");
            (k, Vec::new(), Vec::new())
        },
        |(kernel, parent, size), i| {
            let mut rng = RngStream::family(seed, n as u64, i as u64).rng();
            fill_urrt(parent, n, &mut rng).expect("n >= 1");
            subtree_sizes_into(parent, size);
            kernel.evaluate(parent, size)
        },
    )?;
    Ok(ReplicateTable { n, rows })
}

/// Runs whatever experiment `config` names.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let start = Instant::now();
    let records = match config.experiment {
        ExperimentKind::Persistence => run_persistence(config)?.records,
        ExperimentKind::Dickman => dickman_records(config)?,
        ExperimentKind::HoppeLeader => hoppe_records(config)?,
        ExperimentKind::PolyaDiagonal => polya_records(config)?,
        kind => {
            let mut records = Vec::new();
            for &n in &config.n_values {
                let table = simulate(n, config.reps, config.seed, config.betweenness_q(), config.workers)?;
                records.extend(table_records(kind, config, &table));
            }
            records
        }
    };
    Ok(ExperimentResult::new(
        config.clone(),
        records,
        start.elapsed().as_secs_f64(),
    ))
}

pub fn estimate_root_center_probability(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_kind(config, ExperimentKind::RootCenterProbability)
}

pub fn estimate_expected_rank(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_kind(config, ExperimentKind::ExpectedRank)
}

pub fn estimate_expected_center_index(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_kind(config, ExperimentKind::ExpectedCenterIndex)
}

pub fn estimate_rank_tail(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_kind(config, ExperimentKind::RankTail)
}

pub fn estimate_index_tail(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_kind(config, ExperimentKind::IndexTail)
}

pub fn confidence_coverage(config: &ExperimentConfig) -> Result<ExperimentResult> {
    run_kind(config, ExperimentKind::ConfidenceCoverage)
}

fn run_kind(config: &ExperimentConfig, kind: ExperimentKind) -> Result<ExperimentResult> {
    let mut c = config.clone();
    c.experiment = kind;
    run_experiment(&c)
}

/// `16 (k/3 + 1) (3/4)^k`, an upper bound on `P(I_n >= k)` for betweenness.
pub fn betweenness_index_envelope(k: u64) -> f64 {
    16.0 * (k as f64 / 3.0 + 1.0) * 0.75f64.powi(k as i32)
}

/// Records of one tree-statistic experiment, computed from a table that may
/// be shared across experiments.
pub fn table_records(kind: ExperimentKind, config: &ExperimentConfig, table: &ReplicateTable) -> Vec<Record> {
    let n = table.n as u64;
    let reps = table.reps();
    let mut out = Vec::new();
    for &m in &config.measures {
        let name = m.name();
        let name = name.as_str();
        match kind {
            ExperimentKind::RootCenterProbability => {
                let hits = table.root_ranks(m).filter(|&r| r == 1).count() as u64;
                out.push(Record::new(
                    name,
                    n,
                    "prob_root_center",
                    "",
                    proportion(hits, reps),
                    reps,
                ));
            }
            ExperimentKind::ExpectedRank => {
                let mom: IntMoments = table.root_ranks(m).map(u64::from).collect();
                out.push(Record::new(name, n, "mean_rank", "", (mom.mean(), mom.stderr()), reps));
                if n > 1 {
                    let ln = (n as f64).ln();
                    out.push(Record::new(
                        name,
                        n,
                        "mean_rank_over_ln_n",
                        "",
                        (mom.mean() / ln, mom.stderr() / ln),
                        reps,
                    ));
                }
            }
            ExperimentKind::ExpectedCenterIndex => {
                let mom: IntMoments = table.centers(m).map(u64::from).collect();
                out.push(Record::new(
                    name,
                    n,
                    "mean_center_index",
                    "",
                    (mom.mean(), mom.stderr()),
                    reps,
                ));
            }
            ExperimentKind::RankTail => {
                for &x in &config.x_grid {
                    let hits = table.root_ranks(m).filter(|&r| r as u64 > x).count() as u64;
                    let (p, se) = proportion(hits, reps);
                    out.push(Record::new(name, n, "rank_tail", x, (p, se), reps));
                    let xf = x as f64;
                    out.push(Record::new(name, n, "x_times_rank_tail", x, (xf * p, xf * se), reps));
                }
            }
            ExperimentKind::IndexTail => {
                for &k in &config.k_grid {
                    let hits = table.centers(m).filter(|&c| c as u64 >= k).count() as u64;
                    out.push(Record::new(name, n, "index_tail", k, proportion(hits, reps), reps));
                    if matches!(m, Measure::BetweennessSq | Measure::BetweennessPairs) {
                        out.push(Record::new(
                            name,
                            n,
                            "index_tail_envelope",
                            k,
                            (betweenness_index_envelope(k), 0.0),
                            reps,
                        ));
                    }
                }
                if n > 1 {
                    let ln = (n as f64).ln();
                    let ratios: Vec<f64> = table.centers(m).map(|c| (c as f64).ln() / ln).collect();
                    out.push(Record::new(
                        name,
                        n,
                        "median_log_index_over_log_n",
                        "",
                        median_with_stderr(&ratios),
                        reps,
                    ));
                }
            }
            ExperimentKind::ConfidenceCoverage => {
                for &k in config.conf_grid.iter().filter(|&&k| k >= 1 && k <= n) {
                    let hits = table.root_ranks(m).filter(|&r| r as u64 <= k).count() as u64;
                    out.push(Record::new(name, n, "coverage", k, proportion(hits, reps), reps));
                }
            }
            _ => unreachable!("not a tree-table experiment"),
        }
    }
    out
}

/// Reference draws of the max-Dickman-Goncharov law, in block order.
pub fn dickman_samples(count: usize, seed: u64, workers: usize) -> Result<Vec<f64>> {
    let blocks = count.div_ceil(DICKMAN_BLOCK);
    let chunks = map_indexed(
        blocks,
        workers,
        || (),
        |_, b| {
            let mut rng = RngStream::family(seed, DICKMAN_FAMILY, b as u64).rng();
            let len = DICKMAN_BLOCK.min(count - b * DICKMAN_BLOCK);
            (0..len).map(|_| sample_dickman(&mut rng).value).collect::<Vec<_>>()
        },
    )?;
    Ok(chunks.concat())
}

/// Largest root subtree fraction of `reps` trees on `n` vertices, using the
/// same streams as [`simulate`].
pub fn max_subtree_fractions(n: usize, reps: usize, seed: u64, workers: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(crate::error::Error::invalid("max subtree fraction needs n >= 2"));
    }
    map_indexed(
        reps,
        workers,
        || (Vec::new(), Vec::new()),
        |(parent, size): &mut (Vec<u32>, Vec<u32>), i| {
            let mut rng = RngStream::family(seed, n as u64, i as u64).rng();
            fill_urrt(parent, n, &mut rng).expect("n >= 2");
            subtree_sizes_into(parent, size);
            let best = (1..n).filter(|&v| parent[v] == 0).map(|v| size[v]).max().unwrap_or(0);
            best as f64 / n as f64
        },
    )
}

fn dickman_records(config: &ExperimentConfig) -> Result<Vec<Record>> {
    let samples = dickman_samples(config.samples, config.seed, config.workers)?;
    let count = samples.len() as u64;
    let mut out = Vec::new();
    let ge_half = samples.iter().filter(|&&d| d >= 0.5).count() as u64;
    out.push(Record::new(
        "dickman",
        0,
        "prob_at_least_half",
        "",
        proportion(ge_half, count),
        count,
    ));
    const BINS: usize = 20;
    let width = 1.0 / BINS as f64;
    let mut hist = [0u64; BINS];
    for &d in &samples {
        hist[((d / width) as usize).min(BINS - 1)] += 1;
    }
    for (b, &h) in hist.iter().enumerate() {
        let (p, se) = proportion(h, count);
        let lo = b as f64 * width;
        out.push(Record::new(
            "dickman",
            0,
            "density",
            format!("{lo:.2}"),
            (p / width, se / width),
            count,
        ));
    }
    for &n in config.n_values.iter().filter(|&&n| n >= 2) {
        let fr = max_subtree_fractions(n, config.reps, config.seed, config.workers)?;
        let reps = fr.len() as u64;
        let ks = ks_two_sample(&fr, &samples);
        // asymptotic scale of the two-sample statistic
        let scale = ((reps + count) as f64 / (reps * count) as f64).sqrt();
        out.push(Record::new(
            "max_subtree",
            n as u64,
            "ks_vs_dickman",
            "",
            (ks, scale),
            reps,
        ));
        let hits = fr.iter().filter(|&&f| f >= 0.5).count() as u64;
        out.push(Record::new(
            "max_subtree",
            n as u64,
            "prob_at_least_half",
            "",
            proportion(hits, reps),
            reps,
        ));
    }
    Ok(out)
}

/// Per run: number of colours at each time in `t_grid`, and the last time the
/// leader changed (0 if never).
fn hoppe_trial(horizon: u64, t_grid: &[u64], rng: &mut impl rand::Rng) -> (Vec<u64>, u64) {
    let mut urn = HoppeUrn::new();
    let mut colors = Vec::with_capacity(t_grid.len());
    let mut grid = t_grid.iter().peekable();
    for t in 1..=horizon {
        urn.step(rng);
        while grid.peek().is_some_and(|&&g| g == t) {
            colors.push(urn.state().colors.len() as u64);
            grid.next();
        }
    }
    (colors, urn.leader_changes().last().copied().unwrap_or(0))
}

fn hoppe_records(config: &ExperimentConfig) -> Result<Vec<Record>> {
    let mut t_grid: Vec<u64> = config
        .t_grid
        .iter()
        .copied()
        .filter(|&t| t >= 1 && t <= config.horizon)
        .collect();
    t_grid.sort_unstable();
    t_grid.dedup();
    let runs = map_indexed(
        config.reps,
        config.workers,
        || (),
        |_, i| {
            let mut rng = RngStream::family(config.seed, HOPPE_FAMILY, i as u64).rng();
            hoppe_trial(config.horizon, &t_grid, &mut rng)
        },
    )?;
    let reps = runs.len() as u64;
    let mut out = Vec::new();
    for (j, &t) in t_grid.iter().enumerate() {
        let later = runs.iter().filter(|(_, last)| *last > t).count() as u64;
        out.push(Record::new(
            "hoppe",
            config.horizon,
            "prob_leader_change_after",
            t,
            proportion(later, reps),
            reps,
        ));
        let mom: IntMoments = runs.iter().map(|(c, _)| c[j]).collect();
        out.push(Record::new(
            "hoppe",
            config.horizon,
            "mean_colors",
            t,
            (mom.mean(), mom.stderr()),
            reps,
        ));
        let harmonic: f64 = (1..=t).map(|k| 1.0 / k as f64).sum();
        out.push(Record::new(
            "hoppe",
            config.horizon,
            "harmonic_number",
            t,
            (harmonic, 0.0),
            reps,
        ));
    }
    Ok(out)
}

fn polya_records(config: &ExperimentConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for &a in &config.a_values {
        let h = polya_diagonal_hit_estimate(
            a,
            config.threshold,
            config.horizon,
            config.reps as u64,
            config.seed,
            config.workers,
        )?;
        out.push(Record::new(
            "polya",
            config.horizon,
            "diagonal_hit",
            a,
            (h.estimate, h.stderr),
            h.reps,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::compute_profile;
    use crate::tree::{grow_urrt, SubtreeSizes};

    #[test]
    fn table_matches_direct_profiles() {
        let t = simulate(300, 20, 5, 2, 1).unwrap();
        for (i, row) in t.rows.iter().enumerate() {
            let tree = grow_urrt(300, &mut RngStream::family(5, 300, i as u64).rng()).unwrap();
            let sizes = SubtreeSizes::new(&tree);
            for m in Measure::STANDARD {
                let rep = compute_profile(&tree, &sizes, m).unwrap().report();
                assert_eq!(row.root_rank[slot_of(m)], rep.root_rank);
                assert_eq!(row.center[slot_of(m)], rep.center_index);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut c = ExperimentConfig::new(ExperimentKind::RankTail, 17);
        c.n_values = vec![200, 500];
        c.reps = 300;
        let a = run_experiment(&c).unwrap().to_csv();
        c.workers = 3;
        assert_eq!(run_experiment(&c).unwrap().to_csv(), a);
    }

    #[test]
    fn trivial_cells() {
        let mut c = ExperimentConfig::new(ExperimentKind::IndexTail, 2);
        c.n_values = vec![50];
        c.reps = 100;
        c.k_grid = vec![1];
        let r = run_experiment(&c).unwrap();
        for m in Measure::STANDARD {
            assert_eq!(r.find(&m.name(), 50, "index_tail", "1").unwrap().estimate, 1.0);
        }
        c.experiment = ExperimentKind::ConfidenceCoverage;
        c.conf_grid = vec![50, 51];
        let r = run_experiment(&c).unwrap();
        assert_eq!(r.find("rumor", 50, "coverage", "50").unwrap().estimate, 1.0);
        assert!(r.find("rumor", 50, "coverage", "51").is_none());
        c.experiment = ExperimentKind::RankTail;
        c.x_grid = vec![50];
        let r = run_experiment(&c).unwrap();
        assert_eq!(r.find("jordan", 50, "rank_tail", "50").unwrap().estimate, 0.0);
    }

    #[test]
    fn envelope_values() {
        assert!((betweenness_index_envelope(5) - 16.0 * (8.0 / 3.0) * 0.75f64.powi(5)).abs() < 1e-12);
        assert!(betweenness_index_envelope(15) < betweenness_index_envelope(10));
    }

    #[test]
    fn hoppe_and_polya_rows() {
        let mut c = ExperimentConfig::new(ExperimentKind::HoppeLeader, 4);
        c.reps = 50;
        c.horizon = 500;
        c.t_grid = vec![10, 100, 1000];
        let r = run_experiment(&c).unwrap();
        assert!(r.find("hoppe", 500, "mean_colors", "100").is_some());
        assert!(r.find("hoppe", 500, "mean_colors", "1000").is_none());
        let mut c = ExperimentConfig::new(ExperimentKind::PolyaDiagonal, 4);
        c.reps = 50;
        c.horizon = 100;
        c.a_values = vec![1, 2];
        assert_eq!(run_experiment(&c).unwrap().records.len(), 2);
    }
}

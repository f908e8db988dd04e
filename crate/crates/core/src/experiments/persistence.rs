//! Growing trajectories and the stability of `I_n` and `R_n` along them.
//!
//! The centroid and the degree center are observed after every insertion;
//! root ranks and the betweenness center at the configured evaluation
//! points.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::Rng;

use super::config::ExperimentConfig;
use super::growth::Growth;
use super::kernel::{slot_of, BETWEENNESS, CLOSENESS, DEGREE, JORDAN, RUMOR};
use super::parallel::map_indexed;
use super::result::Record;
use super::stats::{proportion, IntMoments};
use crate::error::{Error, Result};
use crate::rng::RngStream;

const PERSISTENCE_FAMILY: u64 = u64::MAX - 3;

pub const STAT_I: usize = 0;
pub const STAT_R: usize = 1;

/// Run-length encoded sequence of one statistic along a trajectory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Track {
    /// `(n, value)` for every observed change; the value at `n = 1` is 1.
    pub changes: Vec<(u32, u32)>,
}

impl Track {
    fn observe(&mut self, n: u32, value: u32) {
        if self.value_at(u32::MAX) != value {
            self.changes.push((n, value));
        }
    }

    pub fn value_at(&self, n: u32) -> u32 {
        let i = self.changes.partition_point(|&(t, _)| t <= n);
        if i == 0 {
            1
        } else {
            self.changes[i - 1].1
        }
    }

    /// Last change at or before `n`, or 0 if the value never moved.
    pub fn last_change(&self, n: u32) -> u32 {
        let i = self.changes.partition_point(|&(t, _)| t <= n);
        if i == 0 {
            0
        } else {
            self.changes[i - 1].0
        }
    }

    /// Whether the value moves at some step in `(n/2, n]`.
    pub fn changes_in_last_half(&self, n: u32) -> bool {
        self.last_change(n) > n / 2
    }
}

#[derive(Clone, Debug)]
pub struct PersistenceRecord {
    pub trajectory: u64,
    pub horizon: u32,
    /// `tracks[slot][STAT_I or STAT_R]`, slots as in the kernel.
    pub tracks: [[Track; 2]; 5],
}

impl PersistenceRecord {
    pub fn last_change(&self, slot: usize, stat: usize) -> u32 {
        self.tracks[slot][stat].last_change(self.horizon)
    }

    /// Set when the statistic still moved in the final half of the horizon.
    pub fn censored(&self, slot: usize, stat: usize) -> bool {
        self.tracks[slot][stat].changes_in_last_half(self.horizon)
    }
}

#[derive(Clone, Debug)]
pub struct PersistenceRun {
    pub trajectories: Vec<PersistenceRecord>,
    pub records: Vec<Record>,
}

/// Stream of trajectory `id`. Feeding it to [`crate::tree::grow_urrt`]
/// reproduces the trajectory's tree at any horizon.
pub fn trajectory_stream(seed: u64, id: u64) -> RngStream {
    RngStream::family(seed, PERSISTENCE_FAMILY, id)
}

/// Grows one trajectory to `horizon` and records every observed change.
fn trajectory(config: &ExperimentConfig, horizon: usize, id: u64, growth: &mut Growth) -> PersistenceRecord {
    let mut rng = trajectory_stream(config.seed, id).rng();
    growth.reset();
    let mut tracks: [[Track; 2]; 5] = Default::default();
    for n in 2..=horizon {
        growth.insert(rng.random_range(0..n - 1));
        let t = n as u32;
        let centroid = growth.centroid_label;
        for slot in [JORDAN, CLOSENESS, RUMOR] {
            tracks[slot][STAT_I].observe(t, centroid);
        }
        tracks[DEGREE][STAT_I].observe(t, growth.degree_center_label());
        if config.is_evaluation_point(n) {
            let snap = growth.snapshot();
            tracks[BETWEENNESS][STAT_I].observe(t, snap.center[BETWEENNESS]);
            for (slot, track) in tracks.iter_mut().enumerate() {
                track[STAT_R].observe(t, snap.root_rank[slot]);
            }
        }
    }
    PersistenceRecord {
        trajectory: id,
        horizon: horizon as u32,
        tracks,
    }
}

/// Grows `reps` trajectories to the last checkpoint and summarizes, for each
/// checkpoint `N`, how many still change `I_n` or `R_n` in `(N/2, N]`.
pub fn run_persistence(config: &ExperimentConfig) -> Result<PersistenceRun> {
    config.validate()?;
    let horizon = *config
        .checkpoints
        .last()
        .ok_or_else(|| Error::config("persistence needs at least one checkpoint"))?;
    let q = config.betweenness_q();
    Growth::new(horizon, q)?;
    let trajectories = map_indexed(
        config.reps,
        config.workers,
        || Growth::new(horizon, q).expect("checked above"),
        |growth, i| trajectory(config, horizon, i as u64, growth),
    )?;

    let reps = trajectories.len() as u64;
    let mut records = Vec::new();
    for &cp in &config.checkpoints {
        let n = cp as u32;
        for &m in &config.measures {
            let slot = slot_of(m);
            for (stat, label) in [(STAT_I, "I"), (STAT_R, "R")] {
                let moved = trajectories
                    .iter()
                    .filter(|t| t.tracks[slot][stat].changes_in_last_half(n))
                    .count() as u64;
                records.push(Record::new(
                    m.name(),
                    cp as u64,
                    &format!("{label}_change_last_half"),
                    "",
                    proportion(moved, reps),
                    reps,
                ));
                let values: IntMoments = trajectories
                    .iter()
                    .map(|t| t.tracks[slot][stat].value_at(n) as u64)
                    .collect();
                records.push(Record::new(
                    m.name(),
                    cp as u64,
                    &format!("mean_{label}"),
                    "",
                    (values.mean(), values.stderr()),
                    reps,
                ));
            }
        }
    }
    let run = PersistenceRun { trajectories, records };
    if let Some(path) = &config.dump {
        dump_trajectories(config, &run, path)?;
    }
    Ok(run)
}

/// Writes `replicate,n,measure,I,R` at every evaluation point.
pub fn dump_trajectories(config: &ExperimentConfig, run: &PersistenceRun, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "replicate,n,measure,I,R")?;
    for rec in &run.trajectories {
        for n in 1..=rec.horizon {
            if n > 1 && !config.is_evaluation_point(n as usize) {
                continue;
            }
            for &m in &config.measures {
                let tr = &rec.tracks[slot_of(m)];
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    rec.trajectory,
                    n,
                    m.name(),
                    tr[STAT_I].value_at(n),
                    tr[STAT_R].value_at(n)
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;

    fn config(reps: usize, checkpoints: Vec<usize>) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(ExperimentKind::Persistence, 31);
        c.reps = reps;
        c.checkpoints = checkpoints;
        c
    }

    #[test]
    fn track_queries() {
        let mut t = Track::default();
        t.observe(2, 1);
        t.observe(3, 2);
        t.observe(4, 2);
        t.observe(9, 1);
        assert_eq!(t.changes, [(3, 2), (9, 1)]);
        assert_eq!(t.value_at(1), 1);
        assert_eq!(t.value_at(8), 2);
        assert_eq!(t.last_change(8), 3);
        assert!(!t.changes_in_last_half(8));
        assert!(t.changes_in_last_half(10));
        assert_eq!(t.last_change(2), 0);
    }

    #[test]
    fn strided_run_agrees_with_dense_run_at_evaluation_points() {
        let mut dense = config(5, vec![64, 256]);
        dense.dense_until = 256;
        let mut sparse = dense.clone();
        sparse.dense_until = 0;
        sparse.stride = 8;
        let a = run_persistence(&dense).unwrap();
        let b = run_persistence(&sparse).unwrap();
        for (x, y) in a.trajectories.iter().zip(&b.trajectories) {
            for slot in 0..5 {
                for n in (8..=256).step_by(8) {
                    assert_eq!(x.tracks[slot][STAT_R].value_at(n), y.tracks[slot][STAT_R].value_at(n));
                    assert_eq!(x.tracks[slot][STAT_I].value_at(n), y.tracks[slot][STAT_I].value_at(n));
                }
            }
        }
    }

    #[test]
    fn summary_flags_are_consistent() {
        let run = run_persistence(&config(20, vec![100, 300])).unwrap();
        for t in &run.trajectories {
            for slot in 0..5 {
                for stat in [STAT_I, STAT_R] {
                    let last = t.last_change(slot, stat);
                    assert!(last <= t.horizon);
                    assert_eq!(t.censored(slot, stat), last > t.horizon / 2);
                }
            }
        }
        assert_eq!(run.records.len(), 2 * 5 * 4);
        let w = {
            let mut c = config(20, vec![100, 300]);
            c.workers = 2;
            run_persistence(&c).unwrap()
        };
        assert_eq!(w.records, run.records);
    }

    #[test]
    fn dump_has_header_and_rows() {
        let dir = std::env::temp_dir().join(format!("rrt-dump-{}", std::process::id()));
        let mut c = config(2, vec![20]);
        c.dump = Some(dir.clone());
        run_persistence(&c).unwrap();
        let text = std::fs::read_to_string(&dir).unwrap();
        std::fs::remove_file(&dir).ok();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("replicate,n,measure,I,R"));
        assert_eq!(lines.count(), 2 * 20 * 5);
    }
}

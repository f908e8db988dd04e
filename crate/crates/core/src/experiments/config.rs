//! Flat `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::centrality::Measure;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    RootCenterProbability,
    ExpectedRank,
    ExpectedCenterIndex,
    RankTail,
    IndexTail,
    ConfidenceCoverage,
    Persistence,
    Dickman,
    HoppeLeader,
    PolyaDiagonal,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 10] = [
        ExperimentKind::RootCenterProbability,
        ExperimentKind::ExpectedRank,
        ExperimentKind::ExpectedCenterIndex,
        ExperimentKind::RankTail,
        ExperimentKind::IndexTail,
        ExperimentKind::ConfidenceCoverage,
        ExperimentKind::Persistence,
        ExperimentKind::Dickman,
        ExperimentKind::HoppeLeader,
        ExperimentKind::PolyaDiagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::RootCenterProbability => "root-center-probability",
            ExperimentKind::ExpectedRank => "expected-rank",
            ExperimentKind::ExpectedCenterIndex => "expected-center-index",
            ExperimentKind::RankTail => "rank-tail",
            ExperimentKind::IndexTail => "index-tail",
            ExperimentKind::ConfidenceCoverage => "confidence-coverage",
            ExperimentKind::Persistence => "persistence",
            ExperimentKind::Dickman => "dickman",
            ExperimentKind::HoppeLeader => "hoppe-leader",
            ExperimentKind::PolyaDiagonal => "polya-diagonal",
        }
    }

    fn default_reps(self) -> usize {
        match self {
            ExperimentKind::Persistence | ExperimentKind::HoppeLeader => 1_000,
            _ => 10_000,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::config(format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub measures: Vec<Measure>,
    pub n_values: Vec<usize>,
    pub reps: usize,
    /// Thread count; never affects results.
    pub workers: usize,
    /// Persistence horizons. Horizons beyond `dense_until` must be multiples
    /// of the stride.
    pub checkpoints: Vec<usize>,
    /// Full rankings in persistence runs are evaluated at every step up to
    /// `dense_until` and at multiples of `stride` after that.
    pub stride: usize,
    pub dense_until: usize,
    /// Thresholds `x` for `P(R_n > x)`.
    pub x_grid: Vec<u64>,
    /// Thresholds `k` for `P(I_n >= k)`.
    pub k_grid: Vec<u64>,
    /// Confidence-set sizes `K`.
    pub conf_grid: Vec<u64>,
    /// Betweenness exponent.
    pub q: u32,
    /// Pólya starting counts `a`.
    pub a_values: Vec<u64>,
    /// Pólya diagonal level.
    pub threshold: f64,
    /// Pólya horizon and Hoppe run length.
    pub horizon: u64,
    /// Times at which `P(leader changes after t)` is reported.
    pub t_grid: Vec<u64>,
    /// Dickman samples drawn for the reference distribution.
    pub samples: usize,
    pub out: Option<PathBuf>,
    /// Optional per-trajectory CSV for persistence runs.
    pub dump: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "experiment",
    "seed",
    "measures",
    "n",
    "reps",
    "workers",
    "checkpoints",
    "stride",
    "dense_until",
    "x_grid",
    "k_grid",
    "conf_grid",
    "q",
    "a_values",
    "threshold",
    "horizon",
    "t_grid",
    "samples",
    "out",
    "dump",
];

fn log_grid(max: u64) -> Vec<u64> {
    let mut g = Vec::new();
    let mut scale = 1u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let x = m * scale;
            if x > max {
                break 'outer;
            }
            g.push(x);
        }
        scale *= 10;
    }
    g
}

impl ExperimentConfig {
    /// Defaults for `kind`; the seed is still mandatory.
    pub fn new(kind: ExperimentKind, seed: u64) -> Self {
        let (checkpoints, horizon) = match kind {
            ExperimentKind::Persistence => (vec![1_000, 10_000, 100_000], 100_000),
            ExperimentKind::HoppeLeader => (Vec::new(), 100_000),
            _ => (Vec::new(), 100_000),
        };
        Self {
            experiment: kind,
            seed,
            measures: Measure::STANDARD.to_vec(),
            n_values: vec![1_000, 10_000, 100_000],
            reps: kind.default_reps(),
            workers: 1,
            checkpoints,
            stride: 16,
            dense_until: 10_000,
            x_grid: log_grid(1_000),
            k_grid: vec![1, 2, 3, 5, 10, 15, 20],
            conf_grid: log_grid(1_000),
            q: 2,
            a_values: vec![1, 2, 3, 4, 6, 8],
            threshold: 0.5,
            horizon,
            t_grid: vec![100, 1_000, 10_000],
            samples: 1_000_000,
            out: None,
            dump: None,
        }
    }

    /// Parses a config file. `experiment` and `seed` are required; unknown
    /// keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected `key = value`", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(Error::config(format!("line {}: unknown key `{k}`", i + 1)));
            }
            if map.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::config(format!("line {}: duplicate key `{k}`", i + 1)));
            }
        }
        Self::from_map(&map)
    }

    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let required = |k: &str| {
            map.get(k)
                .ok_or_else(|| Error::config(format!("missing required key `{k}`")))
        };
        let kind: ExperimentKind = required("experiment")?.parse()?;
        let seed = parse_num(required("seed")?, "seed")?;
        let mut c = Self::new(kind, seed);
        for (k, v) in map {
            match k.as_str() {
                "experiment" | "seed" => {}
                "measures" => {
                    c.measures = split(v)
                        .map(|s| s.parse().map_err(|e: Error| Error::config(e.to_string())))
                        .collect::<Result<_>>()?
                }
                "n" => c.n_values = parse_list(v, k)?,
                "reps" => c.reps = parse_num(v, k)?,
                "workers" => c.workers = parse_num(v, k)?,
                "checkpoints" => c.checkpoints = parse_list(v, k)?,
                "stride" => c.stride = parse_num(v, k)?,
                "dense_until" => c.dense_until = parse_num(v, k)?,
                "x_grid" => c.x_grid = parse_list(v, k)?,
                "k_grid" => c.k_grid = parse_list(v, k)?,
                "conf_grid" => c.conf_grid = parse_list(v, k)?,
                "q" => c.q = parse_num(v, k)?,
                "a_values" => c.a_values = parse_list(v, k)?,
                "threshold" => c.threshold = parse_num(v, k)?,
                "horizon" => c.horizon = parse_num(v, k)?,
                "t_grid" => c.t_grid = parse_list(v, k)?,
                "samples" => c.samples = parse_num(v, k)?,
                "out" => c.out = Some(PathBuf::from(v)),
                "dump" => c.dump = Some(PathBuf::from(v)),
                other => return Err(Error::config(format!("unknown key `{other}`"))),
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::config("reps must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::config("workers must be at least 1"));
        }
        if self.measures.is_empty() {
            return Err(Error::config("measures must not be empty"));
        }
        let betweenness = self
            .measures
            .iter()
            .filter(|m| m.power().is_some() || **m == Measure::BetweennessPairs)
            .count();
        if betweenness > 1 {
            return Err(Error::config("at most one betweenness variant per run"));
        }
        if self.n_values.contains(&0) {
            return Err(Error::config("n values must be at least 1"));
        }
        if self.q < 2 {
            return Err(Error::config("q must be at least 2"));
        }
        if !self.checkpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::config("checkpoints must be strictly increasing"));
        }
        if self.experiment == ExperimentKind::Persistence {
            if self.checkpoints.is_empty() {
                return Err(Error::config("persistence needs at least one checkpoint"));
            }
            let stride = self.stride;
            if stride == 0 {
                return Err(Error::config("stride must be at least 1"));
            }
            if self.checkpoints[0] < 2 {
                return Err(Error::config("checkpoints must be at least 2"));
            }
            if let Some(c) = self
                .checkpoints
                .iter()
                .find(|&&c| c > self.dense_until && c % stride != 0)
            {
                return Err(Error::config(format!(
                    "checkpoint {c} is not a multiple of stride {stride}"
                )));
            }
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::config("threshold must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Whether persistence runs evaluate full rankings at `n`.
    pub fn is_evaluation_point(&self, n: usize) -> bool {
        n <= self.dense_until || n.is_multiple_of(self.stride)
    }

    /// Betweenness exponent implied by the measure list.
    pub fn betweenness_q(&self) -> u32 {
        self.measures
            .iter()
            .find_map(|m| match m {
                Measure::BetweennessQ(q) => Some(*q),
                Measure::BetweennessSq | Measure::BetweennessPairs => Some(2),
                _ => None,
            })
            .unwrap_or(self.q)
    }

    /// Every key that can change results, in a fixed order. Worker count and
    /// output paths are excluded.
    pub fn canonical_lines(&self) -> Vec<String> {
        let list = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let usizes = |v: &[usize]| list(&v.iter().map(|&x| x as u64).collect::<Vec<_>>());
        let measures = self.measures.iter().map(|m| m.name()).collect::<Vec<_>>().join(",");
        vec![
            format!("experiment = {}", self.experiment),
            format!("seed = {}", self.seed),
            format!("measures = {measures}"),
            format!("n = {}", usizes(&self.n_values)),
            format!("reps = {}", self.reps),
            format!("checkpoints = {}", usizes(&self.checkpoints)),
            format!("stride = {}", self.stride),
            format!("dense_until = {}", self.dense_until),
            format!("x_grid = {}", list(&self.x_grid)),
            format!("k_grid = {}", list(&self.k_grid)),
            format!("conf_grid = {}", list(&self.conf_grid)),
            format!("q = {}", self.q),
            format!("a_values = {}", list(&self.a_values)),
            format!("threshold = {}", self.threshold),
            format!("horizon = {}", self.horizon),
            format!("t_grid = {}", list(&self.t_grid)),
            format!("samples = {}", self.samples),
        ]
    }

    /// SHA-256 over [`ExperimentConfig::canonical_lines`].
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for line in self.canonical_lines() {
            h.update(line.as_bytes());
            h.update(b"\n");
        }
        let mut s = String::with_capacity(64);
        for b in h.finalize() {
            write!(s, "{b:02x}").unwrap();
        }
        s
    }
}

fn split(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: FromStr>(v: &str, key: &str) -> Result<T> {
    let cleaned: String = v.trim().replace('_', "");
    if let Ok(x) = cleaned.parse() {
        return Ok(x);
    }
    // Accept scientific integers such as 1e5.
    if let Some((m, e)) = cleaned.split_once(['e', 'E']) {
        if let (Ok(m), Ok(e)) = (m.parse::<u64>(), e.parse::<u32>()) {
            if let Some(x) = 10u64.checked_pow(e).and_then(|p| p.checked_mul(m)) {
                if let Ok(x) = x.to_string().parse() {
                    return Ok(x);
                }
            }
        }
    }
    Err(Error::config(format!("invalid value `{v}` for `{key}`")))
}

fn parse_list<T: FromStr>(v: &str, key: &str) -> Result<Vec<T>> {
    split(v).map(|s| parse_num(s, key)).collect()
}

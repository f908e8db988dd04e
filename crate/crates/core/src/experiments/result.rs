//! Tabular experiment output.

use std::fmt::Write as _;

use serde::Serialize;

use super::config::ExperimentConfig;
use crate::format::sig_digits;

pub const CSV_HEADER: &str = "measure,n,statistic,param,estimate,stderr,reps,seed";

/// One estimated cell. `param` is the threshold, `K`, `a` or `t` the cell
/// depends on, or empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub measure: String,
    pub n: u64,
    pub statistic: String,
    pub param: String,
    pub estimate: f64,
    pub stderr: f64,
    pub reps: u64,
}

impl Record {
    pub fn new(
        measure: impl Into<String>,
        n: u64,
        statistic: &str,
        param: impl ToString,
        (estimate, stderr): (f64, f64),
        reps: u64,
    ) -> Self {
        Self {
            measure: measure.into(),
            n,
            statistic: statistic.to_string(),
            param: param.to_string(),
            estimate,
            stderr,
            reps,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub records: Vec<Record>,
    /// Seconds spent running; reported in JSON only.
    pub wall_time: f64,
}

impl ExperimentResult {
    pub fn new(config: ExperimentConfig, records: Vec<Record>, wall_time: f64) -> Self {
        Self {
            config_hash: config.hash(),
            config,
            records,
            wall_time,
        }
    }

    /// First record matching `measure`, `n`, `statistic` and `param`.
    pub fn find(&self, measure: &str, n: u64, statistic: &str, param: &str) -> Option<&Record> {
        self.records
            .iter()
            .find(|r| r.measure == measure && r.n == n && r.statistic == statistic && r.param == param)
    }

    /// CSV with `#` metadata. Nothing here depends on the worker count or
    /// timing, so reruns are byte-identical.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# config_hash = {}", self.config_hash).unwrap();
        for line in self.config.canonical_lines() {
            writeln!(s, "# {line}").unwrap();
        }
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.records {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                r.measure,
                r.n,
                r.statistic,
                r.param,
                sig_digits(r.estimate, 12),
                sig_digits(r.stderr, 12),
                r.reps,
                self.config.seed
            )
            .unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result is serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;

    #[test]
    fn csv_layout() {
        let cfg = ExperimentConfig::new(ExperimentKind::RootCenterProbability, 9);
        let rec = Record::new("jordan", 1000, "prob_root_center", "", (0.3, 0.01), 10);
        let mut res = ExperimentResult::new(cfg, vec![rec], 1.5);
        let a = res.to_csv();
        assert!(a.lines().all(|l| l.starts_with('#') || l.split(',').count() == 8));
        assert!(a.ends_with("jordan,1000,prob_root_center,,0.3,0.01,10,9\n"));
        res.wall_time = 99.0;
        res.config.workers = 4;
        assert_eq!(res.to_csv(), a);
        let json: serde_json::Value = serde_json::from_str(&res.to_json()).unwrap();
        assert_eq!(json["config"]["workers"], 4);
        assert_eq!(json["records"][0]["reps"], 10);
    }
}

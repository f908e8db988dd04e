use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rrt_core::centrality::{compute_profile, CentralityProfile, Measure, ScoreVec};
use rrt_core::experiments::{run_experiment, ExperimentConfig, ExperimentKind};
use rrt_core::format::sig_digits;
use rrt_core::urns::{hoppe_run, polya_run, sample_dickman};
use rrt_core::verify::{verify_exhaustive, Fault};
use rrt_core::{grow_urrt, subtree_sizes, Error, RecursiveTree, RngStream};

const EXIT_USAGE: u8 = 2;
const EXIT_OVERFLOW: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rrt",
    version,
    about = "Random recursive trees, centralities and root-finding experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a uniform random recursive tree and write it as an edge list.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Replicate index within the seed.
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score and rank the vertices of an edge-list tree.
    Centrality {
        #[arg(long = "in")]
        input: PathBuf,
        /// A measure name, or `all`.
        #[arg(long, default_value = "all")]
        measure: String,
        /// Exponent of the generalized betweenness.
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw from the max-Dickman-Goncharov distribution.
    SampleDickman {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump one urn trajectory as CSV.
    Urn {
        #[arg(long, value_enum)]
        kind: UrnKind,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        seed: u64,
        /// Initial X balls of the Pólya urn.
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment described by a `key = value` file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        /// CSV destination; a JSON mirror is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grow trajectories and summarize how long centers and root ranks keep
    /// changing.
    Persistence {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000])]
        checkpoints: Vec<usize>,
        #[arg(long, default_value_t = 16)]
        stride: usize,
        #[arg(long, default_value_t = 10_000)]
        dense_until: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trajectory CSV of `replicate,n,measure,I,R`.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Check fast scores against brute force on every small tree.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, hide = true, default_value_t = FaultArg::None)]
        inject_fault: FaultArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum UrnKind {
    Polya,
    Hoppe,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    None,
    Closeness,
    PairsRank,
}

enum Failure {
    Core(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    match panic::catch_unwind(panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Core(e))) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Overflow(_) => EXIT_OVERFLOW,
                Error::ThreadPool(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            })
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { n, seed, stream, out } => {
            let tree = grow_urrt(n, &mut RngStream::new(seed, stream).rng())?;
            emit(out.as_deref(), &tree.to_edge_list())
        }
        Command::Centrality { input, measure, q, out } => centrality(&input, &measure, q, out.as_deref()),
        Command::SampleDickman { count, seed, out } => {
            let mut rng = RngStream::new(seed, 0).rng();
            let mut s = format!("# seed = {seed}\n# count = {count}\n");
            for _ in 0..count {
                s.push_str(&sig_digits(sample_dickman(&mut rng).value, 12));
                s.push('\n');
            }
            emit(out.as_deref(), &s)
        }
        Command::Urn {
            kind,
            steps,
            seed,
            a,
            out,
        } => {
            let mut rng = RngStream::new(seed, 0).rng();
            let mut s = format!("# seed = {seed}\n# steps = {steps}\n");
            match kind {
                UrnKind::Polya => {
                    writeln!(s, "# a = {a}\nt,x,y").unwrap();
                    for st in polya_run(a, steps, &mut rng)? {
                        writeln!(s, "{},{},{}", st.t, st.x, st.y).unwrap();
                    }
                }
                UrnKind::Hoppe => {
                    s.push_str("t,num_colors,leader,leader_count\n");
                    for r in hoppe_run(steps, &mut rng)?.1 {
                        writeln!(s, "{},{},{},{}", r.t, r.num_colors, r.leader, r.leader_count).unwrap();
                    }
                }
            }
            emit(out.as_deref(), &s)
        }
        Command::Experiment { config, workers, out } => {
            let text = fs::read_to_string(&config)?;
            let mut cfg = ExperimentConfig::parse(&text)?;
            if let Some(w) = workers {
                cfg.workers = w;
            }
            if out.is_some() {
                cfg.out = out;
            }
            cfg.validate()?;
            write_result(&cfg)
        }
        Command::Persistence {
            seed,
            reps,
            checkpoints,
            stride,
            dense_until,
            workers,
            out,
            dump,
        } => {
            let mut cfg = ExperimentConfig::new(ExperimentKind::Persistence, seed);
            cfg.reps = reps;
            cfg.checkpoints = checkpoints;
            cfg.stride = stride;
            cfg.dense_until = dense_until;
            cfg.workers = workers;
            cfg.out = out;
            cfg.dump = dump;
            cfg.validate()?;
            write_result(&cfg)
        }
        Command::Verify { max_n, inject_fault } => {
            let fault = match inject_fault {
                FaultArg::None => Fault::None,
                FaultArg::Closeness => Fault::Closeness,
                FaultArg::PairsRank => Fault::PairsRank,
            };
            let report = verify_exhaustive(max_n, fault)?;
            let mut stdout = io::stdout().lock();
            for line in report.summary_lines() {
                writeln!(stdout, "{line}")?;
            }
            if report.ok() {
                Ok(())
            } else {
                for m in report.mismatches.iter().take(5) {
                    eprintln!("n={} parents={:?} {}: {}", m.n, m.parents, m.measure, m.detail);
                }
                Err(Failure::Internal(format!("{} mismatches", report.mismatches.len())))
            }
        }
    }
}

fn write_result(cfg: &ExperimentConfig) -> Result<(), Failure> {
    let result = run_experiment(cfg)?;
    match &cfg.out {
        Some(path) => {
            fs::write(path, result.to_csv())?;
            fs::write(path.with_extension("json"), result.to_json())?;
            Ok(())
        }
        None => emit(None, &result.to_csv()),
    }
}

fn centrality(input: &Path, measure: &str, q: u32, out: Option<&Path>) -> Result<(), Failure> {
    let text = fs::read_to_string(input)?;
    let tree = RecursiveTree::from_edge_list(&text)?;
    let sizes = subtree_sizes(&tree);
    let measures: Vec<Measure> = if measure == "all" {
        vec![
            Measure::Jordan,
            Measure::Closeness,
            Measure::Rumor,
            Measure::BetweennessSq,
            Measure::Degree,
            Measure::BetweennessPairs,
            Measure::BetweennessQ(q),
        ]
    } else if measure == "betweenness_q" {
        vec![Measure::BetweennessQ(q)]
    } else {
        vec![measure.parse()?]
    };
    let mut csv = String::new();
    let mut report = String::new();
    for (i, &m) in measures.iter().enumerate() {
        let profile = compute_profile(&tree, &sizes, m)?;
        if i > 0 {
            csv.push('\n');
        }
        write_block(&mut csv, &profile);
        let r = profile.report();
        if measures.len() > 1 {
            write!(report, "{m} ").unwrap();
        }
        writeln!(report, "I={} R={}", r.center_index, r.root_rank).unwrap();
    }
    match out {
        Some(path) => fs::write(path, csv)?,
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    io::stdout().lock().write_all(report.as_bytes())?;
    Ok(())
}

/// One `vertex,score,rank` block. Rumor scores are written as `ln phi`.
fn write_block(s: &mut String, p: &CentralityProfile) {
    writeln!(s, "# measure = {}", p.measure).unwrap();
    match &p.scores {
        ScoreVec::Integer(_) => s.push_str("vertex,score,rank\n"),
        ScoreVec::Rumor(_) => s.push_str("vertex,log_score,rank\n"),
    }
    for v in 0..p.len() {
        let score = match &p.scores {
            ScoreVec::Integer(x) => x[v].to_string(),
            ScoreVec::Rumor(r) => sig_digits(r.log[v], 12),
        };
        writeln!(s, "{},{},{}", v + 1, score, p.rank[v]).unwrap();
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

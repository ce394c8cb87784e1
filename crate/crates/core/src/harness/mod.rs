//! Multi-run experiment campaigns.
//!
//! A campaign runs every configured algorithm `runs` times on one problem
//! and aggregates the mean final objective (MO) and the mean evaluations to
//! success (AE). Run `r` of an algorithm is seeded from a hash of
//! `(master seed, algorithm tag, r)`, so results do not depend on how runs
//! are scheduled across threads.

mod report;

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::abc::{random_position, AbcConfig, Colony, RunResult, Variant};
use crate::error::{Error, Result};
use crate::objective::{Benchmark, Problem};
use crate::rng::SeededRng;
use crate::tsp::{self, TspInstance};

pub use report::{compare_table, emit_plot_data, plot_csv, runs_csv, Layout, Table, TableRow, Value};

/// Paper-style cycle grid for TSP comparisons.
pub const TSP_CYCLE_GRID: [u64; 6] = [500, 1000, 1500, 2000, 2500, 3000];

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algorithm {
    Abc,
    CbAbc {
        pr: f64,
    },
    /// Uniform sampling with the same budget; a sanity baseline.
    RandomSearch,
}

impl Algorithm {
    /// Stable identifier, used for seeding and CSV headers.
    pub fn tag(&self) -> String {
        match self {
            Algorithm::Abc => "abc".into(),
            Algorithm::CbAbc { pr } => format!("cbabc_pr{pr}"),
            Algorithm::RandomSearch => "random".into(),
        }
    }

    fn configure(&self, base: &AbcConfig) -> AbcConfig {
        let mut cfg = base.clone();
        match *self {
            Algorithm::CbAbc { pr } => {
                cfg.variant = Variant::CbAbc;
                cfg.crossover_probability = pr;
            }
            _ => {
                cfg.variant = Variant::Abc;
                cfg.crossover_probability = 0.0;
            }
        }
        cfg
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[derive(Clone, Debug)]
pub enum ProblemSpec {
    Benchmark { kind: Benchmark, dim: usize },
    Tsp(Arc<TspInstance>),
}

impl ProblemSpec {
    pub fn benchmark(name: &str, dim: usize) -> Result<Self> {
        let kind: Benchmark = name.parse()?;
        // Surface dimension errors here rather than per run.
        kind.problem(dim)?;
        Ok(ProblemSpec::Benchmark { kind, dim })
    }

    pub fn tsp_file(path: impl AsRef<Path>) -> Result<Self> {
        Ok(ProblemSpec::Tsp(Arc::new(TspInstance::load(path)?)))
    }

    pub fn tsp_generated(n: usize, seed: u64) -> Result<Self> {
        Ok(ProblemSpec::Tsp(Arc::new(TspInstance::generate(n, seed)?)))
    }

    pub fn build(&self) -> Result<Problem> {
        match self {
            ProblemSpec::Benchmark { kind, dim } => kind.problem(*dim),
            ProblemSpec::Tsp(inst) => Ok(tsp::as_problem(inst.clone())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ProblemSpec::Benchmark { kind, .. } => kind.name().into(),
            ProblemSpec::Tsp(inst) => format!("tsp_n{}", inst.len()),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            ProblemSpec::Benchmark { dim, .. } => *dim,
            ProblemSpec::Tsp(inst) => inst.len(),
        }
    }

    pub fn is_tsp(&self) -> bool {
        matches!(self, ProblemSpec::Tsp(_))
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub problem: ProblemSpec,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    /// Objective value at or below which a run counts as solved.
    pub success_threshold: f64,
    /// Optimizer parameters shared by every algorithm; `seed` is the
    /// master seed.
    pub base: AbcConfig,
    pub parallel: bool,
}

impl CampaignConfig {
    pub fn new(problem: ProblemSpec, algorithms: Vec<Algorithm>) -> Self {
        Self { problem, algorithms, runs: 30, success_threshold: 1e-5, base: AbcConfig::default(), parallel: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.success_threshold.is_nan() {
            return Err(Error::Config("success threshold is NaN".into()));
        }
        for algorithm in &self.algorithms {
            algorithm.configure(&self.base).validate()?;
        }
        Ok(())
    }
}

/// Seed for run `run` of the algorithm tagged `tag`.
pub fn run_seed(master: u64, tag: &str, run: usize) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update((tag.len() as u64).to_le_bytes());
    hasher.update(tag.as_bytes());
    hasher.update((run as u64).to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

/// Uniform sampling with the colony's accounting: `sn` initial samples,
/// then blocks of `employed_bees + onlooker_bees` samples per cycle.
pub fn random_search(problem: &Problem, config: &AbcConfig, success_threshold: f64) -> Result<RunResult> {
    config.validate()?;
    let mut rng = SeededRng::new(config.seed);
    let mut best_position = Vec::new();
    let mut best = f64::INFINITY;
    let mut evaluations = 0u64;
    let mut success_at = None;
    let mut sample = |evaluations: &mut u64, best: &mut f64, best_position: &mut Vec<f64>| -> Result<()> {
        let x = random_position(problem.bounds(), &mut rng);
        let value = problem.evaluate(&x)?;
        *evaluations += 1;
        if value < *best {
            *best = value;
            *best_position = x;
        }
        if success_at.is_none() && value <= success_threshold {
            success_at = Some(*evaluations);
        }
        Ok(())
    };
    for _ in 0..config.sn {
        sample(&mut evaluations, &mut best, &mut best_position)?;
    }
    let initial_best = best;
    let per_cycle = (config.employed_bees + config.onlooker_bees).max(1);
    let mut trace = Vec::new();
    let mut cycles = 0;
    while cycles < config.max_cycles && evaluations < config.eval_budget {
        cycles += 1;
        for _ in 0..per_cycle {
            if evaluations >= config.eval_budget {
                break;
            }
            sample(&mut evaluations, &mut best, &mut best_position)?;
        }
        trace.push(best);
    }
    Ok(RunResult {
        best_position,
        best_objective: best,
        initial_best,
        trace,
        evaluations,
        evaluations_to_success: success_at.unwrap_or(config.eval_budget),
        cycles,
    })
}

/// One optimizer run of `algorithm` with an explicit seed.
pub fn run_once(
    problem: &Problem,
    algorithm: Algorithm,
    base: &AbcConfig,
    seed: u64,
    threshold: f64,
) -> Result<RunResult> {
    let cfg = AbcConfig { seed, ..algorithm.configure(base) };
    match algorithm {
        Algorithm::RandomSearch => random_search(problem, &cfg, threshold),
        _ => Colony::new(problem, cfg)?.with_success_threshold(threshold).run(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub result: RunResult,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmStats {
    pub algorithm: Algorithm,
    pub runs: Vec<RunRecord>,
    /// MO: mean final best objective.
    pub mean_objective: f64,
    pub std_objective: f64,
    /// AE: mean evaluations to success.
    pub mean_evaluations: f64,
    pub std_evaluations: f64,
    /// Mean best-so-far after each cycle; runs that stopped early
    /// contribute their final value.
    pub mean_curve: Vec<f64>,
}

impl AlgorithmStats {
    fn from_runs(algorithm: Algorithm, runs: Vec<RunRecord>) -> Self {
        let objectives: Vec<f64> = runs.iter().map(|r| r.result.best_objective).collect();
        let evaluations: Vec<f64> = runs.iter().map(|r| r.result.evaluations_to_success as f64).collect();
        let (mean_objective, std_objective) = mean_std(&objectives);
        let (mean_evaluations, std_evaluations) = mean_std(&evaluations);
        let len = runs.iter().map(|r| r.result.trace.len()).max().unwrap_or(0);
        let mean_curve = (1..=len as u64).map(|c| mean(runs.iter().map(|r| best_at(&r.result, c)))).collect();
        Self { algorithm, runs, mean_objective, std_objective, mean_evaluations, std_evaluations, mean_curve }
    }

    /// Mean over runs of the best objective after `cycle` cycles.
    pub fn mean_best_at(&self, cycle: u64) -> f64 {
        mean(self.runs.iter().map(|r| best_at(&r.result, cycle)))
    }
}

/// Best-so-far after `cycle` cycles, holding the last value past the end.
pub fn best_at(result: &RunResult, cycle: u64) -> f64 {
    if cycle == 0 || result.trace.is_empty() {
        return if cycle == 0 { result.initial_best } else { result.best_objective };
    }
    let idx = (cycle as usize).min(result.trace.len()) - 1;
    result.trace[idx]
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Mean and sample standard deviation (zero for a single value).
fn mean_std(values: &[f64]) -> (f64, f64) {
    let m = mean(values.iter().copied());
    if values.len() < 2 {
        return (m, 0.0);
    }
    let var = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    (m, var.sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignStats {
    pub problem: String,
    pub dimension: usize,
    pub is_tsp: bool,
    pub algorithms: Vec<AlgorithmStats>,
}

impl CampaignStats {
    pub fn algorithm(&self, tag: &str) -> Option<&AlgorithmStats> {
        self.algorithms.iter().find(|a| a.algorithm.tag() == tag)
    }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignStats> {
    cfg.validate()?;
    let problem = cfg.problem.build()?;
    let master = cfg.base.seed;
    let jobs: Vec<(usize, usize, u64)> = cfg
        .algorithms
        .iter()
        .enumerate()
        .flat_map(|(a, algo)| {
            let tag = algo.tag();
            (0..cfg.runs).map(move |r| (a, r, run_seed(master, &tag, r)))
        })
        .collect();
    let execute = |&(a, _, seed): &(usize, usize, u64)| -> Result<RunRecord> {
        let result = run_once(&problem, cfg.algorithms[a], &cfg.base, seed, cfg.success_threshold)?;
        Ok(RunRecord { seed, result })
    };
    let records: Vec<RunRecord> = if cfg.parallel {
        jobs.par_iter().map(execute).collect::<Result<_>>()?
    } else {
        jobs.iter().map(execute).collect::<Result<_>>()?
    };
    let mut records = records.into_iter();
    let algorithms = cfg
        .algorithms
        .iter()
        .map(|&algo| AlgorithmStats::from_runs(algo, records.by_ref().take(cfg.runs).collect()))
        .collect();
    Ok(CampaignStats {
        problem: cfg.problem.label(),
        dimension: cfg.problem.dimension(),
        is_tsp: cfg.problem.is_tsp(),
        algorithms,
    })
}

/// Parses a comma-separated list such as `500,1000,1500`.
pub fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(Error::Config(format!("empty item in list `{text}`")));
    }
    items
        .into_iter()
        .map(|s| s.parse().map_err(|_| Error::Config(format!("cannot parse `{s}` in list `{text}`"))))
        .collect()
}

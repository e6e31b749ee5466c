//! Experiment matrix execution: deterministic per-cell seeding, parallel
//! scheduling and in-order record streaming.

mod record;
mod timing;

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::EvalBudget;
use crate::optimizers::OptimizerConfig;
use crate::problem::Problem;
use crate::problems::{make_instance, ClusterKind, ClusterProblem};
use crate::rng::mix_seed;

pub use record::{read_records, Manifest, RecordWriter, RunRecord, MANIFEST_FILE, RECORDS_FILE};
pub use timing::{measure_timing, TimingConfig, TimingRow};

pub const CLUSTER_EVALS_PER_DIM: u64 = 20_000;

/// A named algorithm configuration in the matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmEntry {
    pub name: String,
    pub config: OptimizerConfig,
}

impl AlgorithmEntry {
    pub fn new(config: OptimizerConfig) -> Self {
        Self {
            name: config.name().to_string(),
            config,
        }
    }

    /// Default-configured algorithms from a list of names.
    pub fn parse_list(names: &[&str]) -> Result<Vec<Self>> {
        names.iter().map(|n| Ok(Self::new(n.parse()?))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemSpec {
    Suite { fn_id: u32, dim: usize },
    Cluster { cluster: ClusterProblem },
}

impl ProblemSpec {
    pub fn suite(fn_id: u32, dim: usize) -> Self {
        Self::Suite { fn_id, dim }
    }

    pub fn cluster(kind: ClusterKind, n_atoms: usize) -> Result<Self> {
        Ok(Self::Cluster {
            cluster: ClusterProblem::new(kind, n_atoms)?,
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::Suite { fn_id, .. } => format!("f{fn_id}"),
            Self::Cluster { cluster } => cluster.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Suite { dim, .. } => *dim,
            Self::Cluster { cluster } => cluster.dim(),
        }
    }

    /// Problem identifier mixed into run seeds: the function id for the
    /// suite, `1000 + N` for Lennard-Jones and `2000 + N` for Morse clusters.
    pub fn seed_key(&self) -> u64 {
        match self {
            Self::Suite { fn_id, .. } => *fn_id as u64,
            Self::Cluster { cluster } => {
                let base = match cluster.kind {
                    ClusterKind::LennardJones => 1000,
                    ClusterKind::Morse => 2000,
                };
                base + cluster.n_atoms as u64
            }
        }
    }

    pub fn build(&self, instance: u32) -> Result<Problem> {
        match self {
            Self::Suite { fn_id, dim } => make_instance(*fn_id, *dim, instance),
            Self::Cluster { cluster } => Ok(cluster.to_problem()?.with_instance(instance)),
        }
    }

    pub fn is_cluster(&self) -> bool {
        matches!(self, Self::Cluster { .. })
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (D={})", self.name(), self.dim())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmEntry>,
    pub problems: Vec<ProblemSpec>,
    pub instances: u32,
    pub runs_per_instance: u32,
    pub cap: u64,
    /// When set, the cap of each problem is this many evaluations per dimension.
    pub cap_per_dim: Option<u64>,
    pub target_error: f64,
    pub master_seed: u64,
    pub worker_count: usize,
    /// When false, `wall_time_s` is written as 0 so record files are byte-reproducible.
    pub record_wall_time: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            problems: Vec::new(),
            instances: 15,
            runs_per_instance: 15,
            cap: 200_000,
            cap_per_dim: None,
            target_error: 1e-8,
            master_seed: 0,
            worker_count: 1,
            record_wall_time: true,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() || self.problems.is_empty() {
            return Err(Error::InvalidConfig(
                "need at least one algorithm and one problem".into(),
            ));
        }
        if self.instances == 0 || self.runs_per_instance == 0 || self.worker_count == 0 {
            return Err(Error::InvalidConfig(
                "instances, runs and workers must be at least 1".into(),
            ));
        }
        if self.cap == 0 || self.cap_per_dim == Some(0) {
            return Err(Error::InvalidConfig("evaluation cap must be at least 1".into()));
        }
        if self.target_error.is_nan() || self.target_error < 0.0 {
            return Err(Error::InvalidConfig("target error must be nonnegative".into()));
        }
        for a in &self.algorithms {
            a.config.validate()?;
        }
        for p in &self.problems {
            if let ProblemSpec::Suite { fn_id, dim } = p {
                crate::problems::SuiteFunction::new(*fn_id)?;
                if *dim < 2 {
                    return Err(Error::InvalidProblem(format!("dimension {dim} below 2")));
                }
            }
        }
        Ok(())
    }

    pub fn cap_for(&self, problem: &ProblemSpec) -> u64 {
        match self.cap_per_dim {
            Some(k) => k * problem.dim() as u64,
            None => self.cap,
        }
    }

    pub fn cell_count(&self) -> usize {
        self.algorithms.len() * self.problems.len() * self.instances as usize * self.runs_per_instance as usize
    }

    /// Cells in output order: algorithm, problem, instance, run.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.cell_count());
        for a in 0..self.algorithms.len() {
            for p in 0..self.problems.len() {
                for instance in 1..=self.instances {
                    for run in 1..=self.runs_per_instance {
                        out.push(Cell {
                            algo: a,
                            problem: p,
                            instance,
                            run,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn cell_seed(&self, cell: &Cell) -> u64 {
        let p = &self.problems[cell.problem];
        cell_seed(
            self.master_seed,
            cell.algo,
            p.seed_key(),
            p.dim(),
            cell.instance,
            cell.run,
        )
    }
}

/// One `(algorithm, problem, instance, run)` coordinate of the matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub algo: usize,
    pub problem: usize,
    pub instance: u32,
    pub run: u32,
}

/// Seed of a single run; depends only on the cell, never on scheduling.
pub fn cell_seed(master: u64, algo_index: usize, problem_key: u64, dim: usize, instance: u32, run: u32) -> u64 {
    mix_seed(
        master,
        &[algo_index as u64, problem_key, dim as u64, instance as u64, run as u64],
    )
}

/// Executes a single cell. Optimizer errors and panics become failed records.
pub fn run_cell(cfg: &ExperimentConfig, cell: &Cell) -> RunRecord {
    let alg = &cfg.algorithms[cell.algo];
    let spec = &cfg.problems[cell.problem];
    let seed = cfg.cell_seed(cell);
    let name = spec.name();
    let failed = || RunRecord::failed(&alg.name, &name, spec.dim(), cell.instance, cell.run, seed);

    let problem = match spec.build(cell.instance) {
        Ok(p) => p,
        Err(e) => {
            log::warn!("{name} instance {}: {e}", cell.instance);
            return failed();
        }
    };
    let budget = EvalBudget::new(cfg.cap_for(spec), cfg.target_error);
    let t0 = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| alg.config.run(&problem, budget, seed)));
    let elapsed = t0.elapsed().as_secs_f64();
    match result {
        Ok(Ok(outcome)) => {
            let wall = if cfg.record_wall_time { elapsed } else { 0.0 };
            let rec = RunRecord::from_outcome(
                &alg.name,
                &name,
                spec.dim(),
                cell.instance,
                cell.run,
                seed,
                outcome,
                wall,
            );
            if rec.is_failed() {
                log::warn!(
                    "{} on {name} instance {} run {}: non-finite objective",
                    alg.name,
                    cell.instance,
                    cell.run
                );
            }
            rec
        }
        Ok(Err(e)) => {
            log::warn!("{} on {name}: {e}", alg.name);
            failed()
        }
        Err(_) => {
            log::warn!(
                "{} on {name} instance {} run {} panicked",
                alg.name,
                cell.instance,
                cell.run
            );
            failed()
        }
    }
}

/// Runs the whole matrix on `worker_count` threads. Records reach `sink`
/// in cell order regardless of completion order.
pub fn run_experiment<F>(cfg: &ExperimentConfig, mut sink: F) -> Result<Vec<RunRecord>>
where
    F: FnMut(&RunRecord) -> Result<()>,
{
    cfg.validate()?;
    let cells = cfg.cells();
    let total = cells.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let cancel = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, RunRecord)>();

    let mut out: Vec<RunRecord> = Vec::with_capacity(total);
    let mut pending: BTreeMap<usize, RunRecord> = BTreeMap::new();
    let mut failure: Option<Error> = None;

    std::thread::scope(|s| {
        let cells = &cells;
        let cancel = &cancel;
        let pool = &pool;
        s.spawn(move || {
            pool.install(|| {
                cells.par_iter().enumerate().for_each_with(tx, |tx, (i, cell)| {
                    if cancel.load(Ordering::Relaxed) {
                        return;
                    }
                    let _ = tx.send((i, run_cell(cfg, cell)));
                });
            });
        });

        for (i, rec) in rx {
            if failure.is_some() {
                continue;
            }
            pending.insert(i, rec);
            while let Some(rec) = pending.remove(&out.len()) {
                if let Err(e) = sink(&rec) {
                    cancel.store(true, Ordering::Relaxed);
                    failure = Some(e);
                    break;
                }
                out.push(rec);
                let done = out.len();
                if done.is_multiple_of(50) || done == total {
                    log::info!("{done}/{total} runs complete");
                }
            }
        }
    });

    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Runs the matrix, writing `records.jsonl` and `manifest.json` into `dir`.
pub fn run_experiment_to_dir(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<RunRecord>> {
    std::fs::create_dir_all(dir)?;
    let mut writer = RecordWriter::create(&dir.join(RECORDS_FILE))?;
    let records = run_experiment(cfg, |r| writer.write(r))?;
    writer.finish()?;
    Manifest::new(cfg, records.len()).write(dir)?;
    Ok(records)
}

/// Cluster matrix: every kind and size, one instance, `2·10^4·D` evaluations
/// per run and no target.
pub fn cluster_config(
    algorithms: Vec<AlgorithmEntry>,
    kinds: &[ClusterKind],
    sizes: &[usize],
    runs: u32,
    master_seed: u64,
    worker_count: usize,
) -> Result<ExperimentConfig> {
    let mut problems = Vec::new();
    for &k in kinds {
        for &n in sizes {
            problems.push(ProblemSpec::cluster(k, n)?);
        }
    }
    Ok(ExperimentConfig {
        algorithms,
        problems,
        instances: 1,
        runs_per_instance: runs,
        cap: CLUSTER_EVALS_PER_DIM,
        cap_per_dim: Some(CLUSTER_EVALS_PER_DIM),
        target_error: 0.0,
        master_seed,
        worker_count,
        record_wall_time: true,
    })
}

pub fn run_clusters<F>(cfg: &ExperimentConfig, sink: F) -> Result<Vec<RunRecord>>
where
    F: FnMut(&RunRecord) -> Result<()>,
{
    if !cfg.problems.iter().all(ProblemSpec::is_cluster) {
        return Err(Error::InvalidConfig(
            "cluster matrix contains a non-cluster problem".into(),
        ));
    }
    run_experiment(cfg, sink)
}

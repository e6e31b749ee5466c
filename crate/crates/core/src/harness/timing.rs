//! Wall-clock overhead of each algorithm relative to pure random search.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::AlgorithmEntry;
use crate::error::{Error, Result};
use crate::eval::EvalBudget;
use crate::optimizers::{run_random_search, OptimizerConfig};
use crate::problems::make_instance;
use crate::rng::mix_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingConfig {
    pub algorithms: Vec<AlgorithmEntry>,
    pub fn_id: u32,
    pub dims: Vec<usize>,
    pub evals: u64,
    pub reps: usize,
    pub seed: u64,
}

impl Default for TimingConfig {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            fn_id: 24,
            dims: vec![20, 40, 60, 80, 100],
            evals: 10_000,
            reps: 10,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub algo: String,
    pub dim: usize,
    /// Hardware-dependent.
    pub mean_seconds: f64,
    pub baseline_seconds: f64,
    /// `mean_seconds / baseline_seconds`.
    pub overhead: f64,
}

/// Runs every algorithm `reps` times per dimension at exactly `evals`
/// evaluations, interleaving a random-search run in each repetition.
pub fn measure_timing(cfg: &TimingConfig) -> Result<Vec<TimingRow>> {
    if cfg.reps == 0 || cfg.evals == 0 || cfg.dims.is_empty() {
        return Err(Error::InvalidConfig("timing needs reps, evals and dims".into()));
    }
    for a in &cfg.algorithms {
        a.config.validate()?;
    }
    let mut rows = Vec::new();
    for &dim in &cfg.dims {
        let problem = make_instance(cfg.fn_id, dim, 1)?.without_optimum();
        let budget = EvalBudget::new(cfg.evals, 0.0);
        let mut base = 0.0;
        let mut sums = vec![0.0; cfg.algorithms.len()];
        for rep in 0..cfg.reps {
            let seed = mix_seed(cfg.seed, &[dim as u64, rep as u64]);
            let t = Instant::now();
            run_random_search(&problem, budget, seed)?;
            base += t.elapsed().as_secs_f64();
            for (k, a) in cfg.algorithms.iter().enumerate() {
                if a.config == OptimizerConfig::RandomSearch {
                    continue;
                }
                let t = Instant::now();
                a.config.run(&problem, budget, seed)?;
                sums[k] += t.elapsed().as_secs_f64();
            }
        }
        let base_mean = base / cfg.reps as f64;
        for (k, a) in cfg.algorithms.iter().enumerate() {
            let mean = if a.config == OptimizerConfig::RandomSearch {
                base_mean
            } else {
                sums[k] / cfg.reps as f64
            };
            rows.push(TimingRow {
                algo: a.name.clone(),
                dim,
                mean_seconds: mean,
                baseline_seconds: base_mean,
                overhead: mean / base_mean.max(f64::MIN_POSITIVE),
            });
        }
    }
    Ok(rows)
}

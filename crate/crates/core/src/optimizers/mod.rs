//! Global optimizers sharing one run contract: a problem, an evaluation
//! budget and a seed go in, a [`RunOutcome`] comes out.

mod bh;
mod bhpop;
mod cmaes;
mod de;
mod hammersley;
mod pbh;
mod perturb;
mod pso;
mod random;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{EvalBudget, Evaluator, Halt};
use crate::problem::Problem;
use crate::trajectory::Trajectory;

pub use bh::{run_bh, Acceptance, BHConfig};
pub use bhpop::{restart_indices, roulette_select, run_bhpop, BHPOPConfig};
pub use cmaes::{default_lambda, log_rank_weights, run_cmaes, CMAESConfig};
pub use de::{binomial_crossover, mutant_curr_to_best_1, mutant_rand_1, run_de, DEConfig, Mutation};
pub use hammersley::{radical_inverse, scrambled_hammersley};
pub use pbh::{closest_by_value, run_pbh, PBHConfig};
pub use perturb::{perturb, PerturbConfig};
pub use pso::{pso_velocity, run_pso, PSOConfig};
pub use random::run_random_search;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    TargetReached,
    BudgetExhausted,
    /// The objective produced a non-finite value; the run stopped there.
    Failed,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::TargetReached => "target_reached",
            Self::BudgetExhausted => "budget_exhausted",
            Self::Failed => "failed",
        }
    }
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-iteration statistics kept alongside a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterationLog {
    /// BH: accepted values. BHPOP/PBH: worst member after each update.
    /// DE/PSO/CMA-ES: best value after each generation.
    pub values: Vec<f64>,
    /// Best population member after each iteration (population methods).
    pub best: Vec<f64>,
    pub pop_sizes: Vec<usize>,
    /// `(iteration, members re-initialized)` for every restart.
    pub restarts: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub trajectory: Trajectory,
    /// Point returned by the algorithm (for the basin-hopping family, its best local minimum).
    pub best_x: Vec<f64>,
    pub best_value: f64,
    /// Best objective value over every evaluation of the run.
    pub best_seen: f64,
    pub evals_used: u64,
    pub out_of_bounds: u64,
    pub status: RunStatus,
    pub log: IterationLog,
}

/// Packs the evaluator state into an outcome; `returned` overrides the
/// evaluator's best point when the algorithm reports a different one.
pub(crate) fn finish(ev: Evaluator<'_>, returned: Option<(Vec<f64>, f64)>, log: IterationLog) -> RunOutcome {
    let s = ev.finish();
    let status = match s.halt {
        Some(Halt::TargetReached) => RunStatus::TargetReached,
        Some(Halt::NonFinite { .. }) => RunStatus::Failed,
        Some(Halt::BudgetExhausted) | None => RunStatus::BudgetExhausted,
    };
    let (best_x, best_value) = match returned {
        Some((x, f)) if f.is_finite() => (x, f),
        _ => (s.best_x.clone(), s.best_value),
    };
    RunOutcome {
        trajectory: s.trajectory,
        best_x,
        best_value,
        best_seen: s.best_value,
        evals_used: s.evals_used,
        out_of_bounds: s.out_of_bounds,
        status,
        log,
    }
}

/// Algorithm selection plus its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum OptimizerConfig {
    Bh(BHConfig),
    Bhpop(BHPOPConfig),
    Pbh(PBHConfig),
    De(DEConfig),
    Pso(PSOConfig),
    Cmaes(CMAESConfig),
    RandomSearch,
}

impl OptimizerConfig {
    pub const NAMES: [&'static str; 7] = ["bh", "bhpop", "pbh", "de", "pso", "cmaes", "random_search"];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bh(_) => "bh",
            Self::Bhpop(_) => "bhpop",
            Self::Pbh(_) => "pbh",
            Self::De(_) => "de",
            Self::Pso(_) => "pso",
            Self::Cmaes(_) => "cmaes",
            Self::RandomSearch => "random_search",
        }
    }

    /// Display label as used in tables.
    pub fn label(&self) -> &'static str {
        match self {
            Self::Bh(_) => "BH",
            Self::Bhpop(_) => "BHPOP",
            Self::Pbh(_) => "PBH",
            Self::De(_) => "DE",
            Self::Pso(_) => "PSO",
            Self::Cmaes(_) => "CMA-ES",
            Self::RandomSearch => "RS",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Bh(c) => c.validate(),
            Self::Bhpop(c) => c.validate(),
            Self::Pbh(c) => c.validate(),
            Self::De(c) => c.validate(),
            Self::Pso(c) => c.validate(),
            Self::Cmaes(c) => c.validate(),
            Self::RandomSearch => Ok(()),
        }
    }

    pub fn run(&self, problem: &Problem, budget: EvalBudget, seed: u64) -> Result<RunOutcome> {
        match self {
            Self::Bh(c) => run_bh(problem, budget, seed, c),
            Self::Bhpop(c) => run_bhpop(problem, budget, seed, c),
            Self::Pbh(c) => run_pbh(problem, budget, seed, c),
            Self::De(c) => run_de(problem, budget, seed, c),
            Self::Pso(c) => run_pso(problem, budget, seed, c),
            Self::Cmaes(c) => run_cmaes(problem, budget, seed, c),
            Self::RandomSearch => run_random_search(problem, budget, seed),
        }
    }

    /// The six compared algorithms with default settings.
    pub fn standard_set() -> Vec<OptimizerConfig> {
        ["bh", "bhpop", "pbh", "de", "pso", "cmaes"]
            .iter()
            .map(|n| n.parse().expect("known name"))
            .collect()
    }
}

impl FromStr for OptimizerConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "bh" => Self::Bh(BHConfig::default()),
            "bhpop" => Self::Bhpop(BHPOPConfig::default()),
            "pbh" => Self::Pbh(PBHConfig::default()),
            "de" => Self::De(DEConfig::default()),
            "pso" => Self::Pso(PSOConfig::default()),
            "cmaes" | "cma_es" => Self::Cmaes(CMAESConfig::default()),
            "random_search" | "random" | "rs" => Self::RandomSearch,
            other => return Err(Error::InvalidConfig(format!("unknown algorithm '{other}'"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in OptimizerConfig::NAMES {
            let c: OptimizerConfig = n.parse().unwrap();
            assert_eq!(c.name(), n);
        }
        assert!("nope".parse::<OptimizerConfig>().is_err());
    }

    #[test]
    fn config_serde_round_trip() {
        for c in OptimizerConfig::standard_set() {
            let s = serde_json::to_string(&c).unwrap();
            let back: OptimizerConfig = serde_json::from_str(&s).unwrap();
            assert_eq!(back, c);
        }
    }
}

use serde::{Deserialize, Serialize};

use super::perturb::{perturb, PerturbConfig};
use super::{finish, IterationLog, RunOutcome};
use crate::error::{Error, Result};
use crate::eval::{EvalBudget, Evaluator};
use crate::local::{minimize, LocalMinConfig};
use crate::problem::Problem;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Acceptance {
    /// Accept only strict improvements.
    #[default]
    Monotonic,
    /// Accept a worse local minimum with probability `exp(-β Δf)`.
    Metropolis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BHConfig {
    pub perturb: PerturbConfig,
    pub acceptance: Acceptance,
    pub beta: f64,
    pub local: LocalMinConfig,
}

impl Default for BHConfig {
    fn default() -> Self {
        Self {
            perturb: PerturbConfig::default(),
            acceptance: Acceptance::Monotonic,
            beta: 1.0,
            local: LocalMinConfig::default(),
        }
    }
}

impl BHConfig {
    pub fn validate(&self) -> Result<()> {
        self.perturb.validate()?;
        self.local.validate()?;
        if self.acceptance == Acceptance::Metropolis && !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidConfig(
                "metropolis acceptance needs a positive beta".into(),
            ));
        }
        Ok(())
    }
}

/// Basin hopping: minimize from a random point, then repeatedly perturb the
/// incumbent, minimize again and apply the acceptance rule.
pub fn run_bh(problem: &Problem, budget: EvalBudget, seed: u64, cfg: &BHConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let mut rng = RngStream::new(seed);
    let mut ev = Evaluator::new(problem, budget);
    let bounds = problem.bounds();

    let x0 = bounds.sample(&mut rng);
    let start = minimize(&mut ev, &x0, &cfg.local);
    let (mut x, mut fx) = (start.x_min, start.f_min);
    let (mut best_x, mut best_f) = (x.clone(), fx);
    let mut log = IterationLog::default();
    log.values.push(fx);

    while !ev.is_done() {
        let y = perturb(&x, bounds, &cfg.perturb, &mut rng);
        let r = minimize(&mut ev, &y, &cfg.local);
        if !r.f_min.is_finite() {
            break;
        }
        let accept = r.f_min < fx
            || (cfg.acceptance == Acceptance::Metropolis && rng.uniform() < (-cfg.beta * (r.f_min - fx)).exp());
        if accept {
            x = r.x_min;
            fx = r.f_min;
            log.values.push(fx);
            if fx < best_f {
                best_f = fx;
                best_x.clone_from(&x);
            }
        }
    }
    Ok(finish(ev, Some((best_x, best_f)), log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Bounds;

    fn quad(d: usize) -> Problem {
        Problem::new("q", Bounds::uniform(d, -5.0, 5.0).unwrap(), |x: &[f64]| {
            x.iter()
                .enumerate()
                .map(|(i, v)| (i + 1) as f64 * (v - 0.5).powi(2))
                .sum()
        })
        .with_optimum(0.0)
    }

    #[test]
    fn convex_solved_by_first_descent() {
        let p = quad(5);
        let out = run_bh(&p, EvalBudget::new(10_000, 1e-8), 1, &BHConfig::default()).unwrap();
        assert_eq!(out.status, super::super::RunStatus::TargetReached);
        assert!(out.best_value <= 1e-8);
        assert!(out.evals_used < 500);
    }

    #[test]
    fn single_eval_budget() {
        let p = quad(3);
        let out = run_bh(&p, EvalBudget::new(1, 1e-8), 5, &BHConfig::default()).unwrap();
        assert_eq!(out.evals_used, 1);
        assert_eq!(out.trajectory.events.len(), 1);
        assert_eq!(out.best_x.len(), 3);
        assert_eq!(out.best_value, p.value(&out.best_x));
    }

    #[test]
    fn metropolis_runs_and_rejects_bad_beta() {
        let p = quad(2);
        let mut cfg = BHConfig {
            acceptance: Acceptance::Metropolis,
            beta: 0.0,
            ..BHConfig::default()
        };
        assert!(run_bh(&p, EvalBudget::new(100, 1e-8), 1, &cfg).is_err());
        cfg.beta = 2.0;
        let out = run_bh(&p, EvalBudget::new(2000, 1e-8), 1, &cfg).unwrap();
        assert!(out.best_value <= 1e-8);
    }
}

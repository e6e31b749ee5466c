use serde::{Deserialize, Serialize};

use super::hammersley::scrambled_hammersley;
use super::perturb::{perturb, PerturbConfig};
use super::{finish, IterationLog, RunOutcome};
use crate::error::{Error, Result};
use crate::eval::{EvalBudget, Evaluator};
use crate::local::{minimize, LocalMinConfig};
use crate::problem::Problem;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct PBHConfig {
    /// `None` means `max(10, D)`.
    pub pop_size: Option<usize>,
    pub perturb: PerturbConfig,
    pub local: LocalMinConfig,
}

impl PBHConfig {
    pub fn validate(&self) -> Result<()> {
        self.perturb.validate()?;
        self.local.validate()?;
        if self.pop_size == Some(0) {
            return Err(Error::InvalidConfig("population size must be at least 1".into()));
        }
        Ok(())
    }

    pub fn resolved_pop_size(&self, dim: usize) -> usize {
        self.pop_size.unwrap_or(dim.max(10))
    }
}

/// Index `k` minimizing `|values[k] - f|`; the lowest index wins ties.
pub fn closest_by_value(values: &[f64], f: f64) -> usize {
    let mut j = 0;
    let mut dj = f64::INFINITY;
    for (k, v) in values.iter().enumerate() {
        let d = (v - f).abs();
        if d < dj {
            dj = d;
            j = k;
        }
    }
    j
}

/// Generational population basin hopping: every member spawns a new local
/// minimum, which competes against the member closest to it in objective value.
pub fn run_pbh(problem: &Problem, budget: EvalBudget, seed: u64, cfg: &PBHConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let mut rng = RngStream::new(seed);
    let mut ev = Evaluator::new(problem, budget);
    let bounds = problem.bounds();
    let n = cfg.resolved_pop_size(problem.dim());

    let mut xs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut fs: Vec<f64> = Vec::with_capacity(n);
    for x0 in scrambled_hammersley(n, bounds, &mut rng) {
        if ev.is_done() {
            break;
        }
        let r = minimize(&mut ev, &x0, &cfg.local);
        xs.push(r.x_min);
        fs.push(r.f_min);
    }

    let mut log = IterationLog::default();
    while !ev.is_done() {
        let mut children = Vec::with_capacity(xs.len());
        for x in &xs {
            if ev.is_done() {
                break;
            }
            let y = perturb(x, bounds, &cfg.perturb, &mut rng);
            let r = minimize(&mut ev, &y, &cfg.local);
            if r.f_min.is_finite() {
                children.push((r.x_min, r.f_min));
            }
        }
        for (z, fz) in children {
            let j = closest_by_value(&fs, fz);
            if fz < fs[j] {
                xs[j] = z;
                fs[j] = fz;
            }
        }
        log.values.push(fs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        log.best.push(fs.iter().cloned().fold(f64::INFINITY, f64::min));
        log.pop_sizes.push(xs.len());
    }

    let b = (0..fs.len()).min_by(|&a, &b| fs[a].total_cmp(&fs[b]));
    let returned = b.map(|b| (xs[b].clone(), fs[b]));
    Ok(finish(ev, returned, log))
}

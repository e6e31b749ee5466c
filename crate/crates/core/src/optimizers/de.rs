use serde::{Deserialize, Serialize};

use super::{finish, IterationLog, RunOutcome};
use crate::error::{Error, Result};
use crate::eval::{EvalBudget, Evaluator};
use crate::problem::Problem;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// `a + F (b - c)`
    Rand1,
    /// `x + F (best - x) + F (b - c)`
    #[default]
    CurrToBest1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DEConfig {
    pub pop_size: usize,
    #[serde(rename = "f")]
    pub scale: f64,
    pub p_cr: f64,
    pub mutation: Mutation,
}

impl Default for DEConfig {
    fn default() -> Self {
        Self {
            pop_size: 30,
            scale: 0.8,
            p_cr: 0.5,
            mutation: Mutation::CurrToBest1,
        }
    }
}

impl DEConfig {
    pub fn validate(&self) -> Result<()> {
        let min_pop = match self.mutation {
            Mutation::Rand1 => 4,
            Mutation::CurrToBest1 => 3,
        };
        if self.pop_size < min_pop {
            return Err(Error::InvalidConfig(format!(
                "population {} too small for {:?} (needs {min_pop})",
                self.pop_size, self.mutation
            )));
        }
        if !(self.scale >= 0.0 && self.scale <= 2.0) {
            return Err(Error::InvalidConfig(format!(
                "scale factor {} outside [0, 2]",
                self.scale
            )));
        }
        if !(0.0..=1.0).contains(&self.p_cr) {
            return Err(Error::InvalidConfig(format!(
                "crossover probability {} outside [0, 1]",
                self.p_cr
            )));
        }
        Ok(())
    }
}

pub fn mutant_rand_1(a: &[f64], b: &[f64], c: &[f64], f: f64) -> Vec<f64> {
    a.iter().zip(b).zip(c).map(|((a, b), c)| a + f * (b - c)).collect()
}

pub fn mutant_curr_to_best_1(x: &[f64], best: &[f64], b: &[f64], c: &[f64], f: f64) -> Vec<f64> {
    (0..x.len())
        .map(|j| x[j] + f * (best[j] - x[j]) + f * (b[j] - c[j]))
        .collect()
}

/// Takes `z_j` when `j == forced` or with probability `p_cr`, else `x_j`.
pub fn binomial_crossover(x: &[f64], z: &[f64], p_cr: f64, forced: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..x.len())
        .map(|j| {
            if j == forced || rng.uniform() < p_cr {
                z[j]
            } else {
                x[j]
            }
        })
        .collect()
}

/// `k` distinct indices from `0..n`, all different from `exclude`.
fn distinct_others(n: usize, exclude: usize, k: usize, rng: &mut RngStream) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let r = rng.index(n);
        if r != exclude && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn argmin(values: &[f64]) -> usize {
    (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0)
}

/// Differential evolution with binomial crossover and in-place greedy replacement.
pub fn run_de(problem: &Problem, budget: EvalBudget, seed: u64, cfg: &DEConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let mut rng = RngStream::new(seed);
    let mut ev = Evaluator::new(problem, budget);
    let bounds = problem.bounds();
    let d = problem.dim();
    let n = cfg.pop_size;

    let mut xs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut fs: Vec<f64> = Vec::with_capacity(n);
    for _ in 0..n {
        let x = bounds.sample(&mut rng);
        match ev.evaluate(&x) {
            Ok(f) => {
                xs.push(x);
                fs.push(f);
            }
            Err(_) => return Ok(finish(ev, None, IterationLog::default())),
        }
    }
    let mut best = argmin(&fs);
    let mut log = IterationLog::default();
    log.values.push(fs[best]);

    'outer: loop {
        for i in 0..n {
            let z = match cfg.mutation {
                Mutation::Rand1 => {
                    let r = distinct_others(n, i, 3, &mut rng);
                    mutant_rand_1(&xs[r[0]], &xs[r[1]], &xs[r[2]], cfg.scale)
                }
                Mutation::CurrToBest1 => {
                    let r = distinct_others(n, i, 2, &mut rng);
                    mutant_curr_to_best_1(&xs[i], &xs[best], &xs[r[0]], &xs[r[1]], cfg.scale)
                }
            };
            let forced = rng.index(d);
            let mut trial = binomial_crossover(&xs[i], &z, cfg.p_cr, forced, &mut rng);
            bounds.clip_in_place(&mut trial);
            let Ok(ft) = ev.evaluate(&trial) else {
                break 'outer;
            };
            if ft <= fs[i] {
                xs[i] = trial;
                fs[i] = ft;
                if ft < fs[best] {
                    best = i;
                }
            }
        }
        log.values.push(fs[best]);
    }
    Ok(finish(ev, Some((xs[best].clone(), fs[best])), log))
}

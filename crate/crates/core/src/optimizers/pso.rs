use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::{finish, IterationLog, RunOutcome};
use crate::error::{Error, Result};
use crate::eval::{EvalBudget, Evaluator};
use crate::problem::Problem;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PSOConfig {
    pub pop_size: usize,
    pub omega: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for PSOConfig {
    fn default() -> Self {
        Self {
            pop_size: 40,
            omega: 1.0 / (2.0 * LN_2),
            c1: 0.5 + LN_2,
            c2: 0.5 + LN_2,
        }
    }
}

impl PSOConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::InvalidConfig("swarm needs at least 2 particles".into()));
        }
        if ![self.omega, self.c1, self.c2].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidConfig("swarm coefficients must be finite".into()));
        }
        Ok(())
    }
}

/// `ω v + c1 r1 (p - x) + c2 r2 (g - x)`, written into `v`.
#[allow(clippy::too_many_arguments)]
pub fn pso_velocity(v: &mut [f64], x: &[f64], personal: &[f64], global: &[f64], cfg: &PSOConfig, r1: f64, r2: f64) {
    for j in 0..v.len() {
        v[j] = cfg.omega * v[j] + cfg.c1 * r1 * (personal[j] - x[j]) + cfg.c2 * r2 * (global[j] - x[j]);
    }
}

/// Global-best particle swarm; the swarm best is refreshed after each sweep.
pub fn run_pso(problem: &Problem, budget: EvalBudget, seed: u64, cfg: &PSOConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let mut rng = RngStream::new(seed);
    let mut ev = Evaluator::new(problem, budget);
    let bounds = problem.bounds();
    let d = problem.dim();
    let n = cfg.pop_size;

    let mut xs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut pf: Vec<f64> = Vec::with_capacity(n);
    for _ in 0..n {
        let x = bounds.sample(&mut rng);
        match ev.evaluate(&x) {
            Ok(f) => {
                xs.push(x);
                pf.push(f);
            }
            Err(_) => return Ok(finish(ev, None, IterationLog::default())),
        }
    }
    let mut vs = vec![vec![0.0; d]; n];
    let mut px = xs.clone();
    let mut g = (0..n).min_by(|&a, &b| pf[a].total_cmp(&pf[b])).unwrap();
    let mut gx = px[g].clone();
    let mut gf = pf[g];
    let mut log = IterationLog::default();
    log.values.push(gf);

    'outer: loop {
        for i in 0..n {
            let r1 = rng.uniform();
            let r2 = rng.uniform();
            pso_velocity(&mut vs[i], &xs[i], &px[i], &gx, cfg, r1, r2);
            for j in 0..d {
                xs[i][j] += vs[i][j];
            }
            bounds.clip_in_place(&mut xs[i]);
            let Ok(f) = ev.evaluate(&xs[i]) else {
                break 'outer;
            };
            if f < pf[i] {
                pf[i] = f;
                px[i].clone_from(&xs[i]);
            }
        }
        g = (0..n).min_by(|&a, &b| pf[a].total_cmp(&pf[b])).unwrap();
        if pf[g] < gf {
            gf = pf[g];
            gx.clone_from(&px[g]);
        }
        log.values.push(gf);
    }
    Ok(finish(ev, Some((gx, gf)), log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Bounds;

    #[test]
    fn pure_inertia_and_jump() {
        let cfg = PSOConfig::default();
        let mut v = vec![1.0, -2.0];
        pso_velocity(&mut v, &[0.0, 0.0], &[3.0, 3.0], &[4.0, 4.0], &cfg, 0.0, 0.0);
        assert!((v[0] - cfg.omega).abs() < 1e-15 && (v[1] + 2.0 * cfg.omega).abs() < 1e-15);

        let cfg = PSOConfig {
            omega: 0.0,
            c1: 0.0,
            c2: 1.0,
            ..PSOConfig::default()
        };
        let x = [1.0, 2.0];
        let mut v = vec![5.0, 5.0];
        pso_velocity(&mut v, &x, &[0.0, 0.0], &[-1.0, 3.0], &cfg, 0.7, 1.0);
        let next: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + b).collect();
        assert_eq!(next, vec![-1.0, 3.0]);
    }

    #[test]
    fn fixed_point_at_global_best() {
        let cfg = PSOConfig::default();
        let x = [0.5, 0.5];
        let mut v = vec![0.0, 0.0];
        pso_velocity(&mut v, &x, &x, &x, &cfg, 0.3, 0.9);
        assert_eq!(v, vec![0.0, 0.0]);
    }

    #[test]
    fn improves_on_sphere() {
        let p = Problem::new("s", Bounds::uniform(4, -5.0, 5.0).unwrap(), |x: &[f64]| {
            x.iter().map(|v| v * v).sum()
        })
        .with_optimum(0.0);
        let out = run_pso(&p, EvalBudget::new(20_000, 1e-8), 8, &PSOConfig::default()).unwrap();
        assert!(out.best_value < 1e-4, "{}", out.best_value);
        assert_eq!(out.out_of_bounds, 0);
    }
}

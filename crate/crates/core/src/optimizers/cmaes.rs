use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{finish, IterationLog, RunOutcome};
use crate::error::{Error, Result};
use crate::eval::{EvalBudget, Evaluator};
use crate::problem::Problem;
use crate::rng::RngStream;

const EIGEN_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CMAESConfig {
    /// Offspring per generation; `None` means `D²/2 + D/2 + 3`.
    pub lambda: Option<usize>,
    /// Parents; `None` means `floor(λ / 2)`.
    pub mu: Option<usize>,
    /// Initial step size as a fraction of the mean domain width.
    pub sigma0_fraction: f64,
}

impl Default for CMAESConfig {
    fn default() -> Self {
        Self {
            lambda: None,
            mu: None,
            sigma0_fraction: 0.3,
        }
    }
}

impl CMAESConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda == Some(0) || self.mu == Some(0) {
            return Err(Error::InvalidConfig("lambda and mu must be positive".into()));
        }
        if let (Some(l), Some(m)) = (self.lambda, self.mu) {
            if m > l {
                return Err(Error::InvalidConfig(format!("mu {m} exceeds lambda {l}")));
            }
        }
        if !(self.sigma0_fraction > 0.0 && self.sigma0_fraction.is_finite()) {
            return Err(Error::InvalidConfig("initial step size must be positive".into()));
        }
        Ok(())
    }

    fn resolve(&self, dim: usize) -> Result<(usize, usize)> {
        let lambda = self.lambda.unwrap_or_else(|| default_lambda(dim));
        let mu = self.mu.unwrap_or((lambda / 2).max(1));
        if mu > lambda {
            return Err(Error::InvalidConfig(format!("mu {mu} exceeds lambda {lambda}")));
        }
        Ok((lambda, mu))
    }
}

pub fn default_lambda(dim: usize) -> usize {
    (dim * dim + dim) / 2 + 3
}

/// `ln(μ + 1/2) - ln(i)`, `i = 1..μ`, normalized to sum 1.
pub fn log_rank_weights(mu: usize) -> Vec<f64> {
    let raw: Vec<f64> = (1..=mu).map(|i| (mu as f64 + 0.5).ln() - (i as f64).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|w| w / s).collect()
}

/// Eigen-decomposition of `c` with eigenvalues floored relative to the largest.
/// `c` is rebuilt from the repaired factors when flooring changed anything.
fn decompose(c: &mut DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let n = c.nrows();
    let sym = (&*c + c.transpose()) * 0.5;
    if sym.iter().any(|v| !v.is_finite()) {
        *c = DMatrix::identity(n, n);
        return (DMatrix::identity(n, n), DVector::from_element(n, 1.0));
    }
    let eig = SymmetricEigen::new(sym);
    let max = eig.eigenvalues.max().max(f64::MIN_POSITIVE);
    let floor = EIGEN_FLOOR * max;
    let mut repaired = false;
    let vals = eig.eigenvalues.map(|v| {
        if v < floor {
            repaired = true;
            floor
        } else {
            v
        }
    });
    let b = eig.eigenvectors;
    *c = if repaired {
        &b * DMatrix::from_diagonal(&vals) * b.transpose()
    } else {
        (&*c + c.transpose()) * 0.5
    };
    (b, vals.map(f64::sqrt))
}

/// Values used for selection: `f + s·v`, where `s` is the gap between the
/// median and best value of the generation (1 when that gap is zero).
fn penalized(fs: &[f64], violations: &[f64]) -> Vec<f64> {
    if violations.iter().all(|v| *v == 0.0) {
        return fs.to_vec();
    }
    let mut sorted = fs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let gap = sorted[sorted.len() / 2] - sorted[0];
    let s = if gap > 0.0 && gap.is_finite() { gap } else { 1.0 };
    fs.iter().zip(violations).map(|(f, v)| f + s * v).collect()
}

/// `(μ/μ_w, λ)` covariance matrix adaptation with cumulative step-size control.
/// Samples are clipped only for evaluation; adaptation sees the raw samples,
/// ranked with a penalty on their distance outside the box.
pub fn run_cmaes(problem: &Problem, budget: EvalBudget, seed: u64, cfg: &CMAESConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let n = problem.dim();
    let (lambda, mu) = cfg.resolve(n)?;
    let mut rng = RngStream::new(seed);
    let mut ev = Evaluator::new(problem, budget);
    let bounds = problem.bounds();
    let nf = n as f64;

    let w = DVector::from_vec(log_rank_weights(mu));
    let mueff = 1.0 / w.iter().map(|v| v * v).sum::<f64>();
    let cc = (4.0 + mueff / nf) / (nf + 4.0 + 2.0 * mueff / nf);
    let cs = (mueff + 2.0) / (nf + mueff + 5.0);
    let c1 = 2.0 / ((nf + 1.3).powi(2) + mueff);
    let cmu = (1.0 - c1).min(2.0 * (mueff - 2.0 + 1.0 / mueff) / ((nf + 2.0).powi(2) + mueff));
    let damps = 1.0 + 2.0 * (((mueff - 1.0) / (nf + 1.0)).sqrt() - 1.0).max(0.0) + cs;
    let chi_n = nf.sqrt() * (1.0 - 1.0 / (4.0 * nf) + 1.0 / (21.0 * nf * nf));

    let mut mean = DVector::from_vec(bounds.sample(&mut rng));
    let mean_width = (0..n).map(|j| bounds.width(j)).sum::<f64>() / nf;
    let mut sigma = cfg.sigma0_fraction * mean_width;
    let mut c = DMatrix::<f64>::identity(n, n);
    let mut pc = DVector::<f64>::zeros(n);
    let mut ps = DVector::<f64>::zeros(n);
    let mut generation = 0u32;
    let mut log = IterationLog::default();

    let mut zs: Vec<DVector<f64>> = Vec::with_capacity(lambda);
    let mut ys: Vec<DVector<f64>> = Vec::with_capacity(lambda);
    let mut fs: Vec<f64> = Vec::with_capacity(lambda);
    let mut violations: Vec<f64> = Vec::with_capacity(lambda);

    'outer: while !ev.is_done() {
        let (b, dvals) = decompose(&mut c);
        zs.clear();
        ys.clear();
        fs.clear();
        violations.clear();
        let spread_unit = sigma * sigma * (c.trace() / nf).max(f64::MIN_POSITIVE);
        for _ in 0..lambda {
            let z = DVector::from_fn(n, |_, _| rng.standard_normal());
            let y = &b * z.component_mul(&dvals);
            let x = &mean + sigma * &y;
            let mut xe: Vec<f64> = x.iter().copied().collect();
            bounds.clip_in_place(&mut xe);
            let Ok(f) = ev.evaluate(&xe) else {
                break 'outer;
            };
            let v: f64 = x.iter().zip(&xe).map(|(a, b)| (a - b) * (a - b)).sum();
            violations.push(v / spread_unit);
            zs.push(z);
            ys.push(y);
            fs.push(f);
        }
        // ranking only: distance outside the box costs about one fitness spread per sigma
        let ranked = penalized(&fs, &violations);
        let mut order: Vec<usize> = (0..lambda).collect();
        order.sort_by(|&a, &b| ranked[a].total_cmp(&ranked[b]).then(fs[a].total_cmp(&fs[b])));
        log.values.push(fs.iter().cloned().fold(f64::INFINITY, f64::min));

        let mut yw = DVector::<f64>::zeros(n);
        let mut zw = DVector::<f64>::zeros(n);
        for (k, &i) in order.iter().take(mu).enumerate() {
            yw.axpy(w[k], &ys[i], 1.0);
            zw.axpy(w[k], &zs[i], 1.0);
        }
        mean.axpy(sigma, &yw, 1.0);

        // C^{-1/2} y_w = B z_w
        ps = (1.0 - cs) * &ps + (cs * (2.0 - cs) * mueff).sqrt() * (&b * &zw);
        generation += 1;
        let ps_norm = ps.norm();
        let hsig_lhs = ps_norm / (1.0 - (1.0 - cs).powi(2 * generation as i32)).sqrt() / chi_n;
        let hsig = if hsig_lhs < 1.4 + 2.0 / (nf + 1.0) { 1.0 } else { 0.0 };
        pc = (1.0 - cc) * &pc + hsig * (cc * (2.0 - cc) * mueff).sqrt() * &yw;

        let mut rank_mu = DMatrix::<f64>::zeros(n, n);
        for (k, &i) in order.iter().take(mu).enumerate() {
            rank_mu.ger(w[k], &ys[i], &ys[i], 1.0);
        }
        let old = c.clone();
        c = (1.0 - c1 - cmu) * old.clone()
            + c1 * (&pc * pc.transpose() + (1.0 - hsig) * cc * (2.0 - cc) * old)
            + cmu * rank_mu;

        sigma *= ((cs / damps) * (ps_norm / chi_n - 1.0)).exp();
        if !sigma.is_finite() || sigma > 1e10 * mean_width {
            sigma = cfg.sigma0_fraction * mean_width;
        }
    }
    Ok(finish(ev, None, log))
}

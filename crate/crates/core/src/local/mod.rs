//! Budget-aware bounded local minimization.
//!
//! The default method is a limited-memory BFGS with gradient projection onto
//! the box and forward-difference gradients, so it only needs function
//! values. A Nelder-Mead simplex is available as a derivative-free alternative.

mod fd;
mod lbfgsb;
mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::Evaluator;

pub use fd::fd_gradient;
pub use lbfgsb::minimize_lbfgsb;
pub use simplex::minimize_simplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LocalMethod {
    #[default]
    QuasiNewtonBounded,
    Simplex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LocalMinConfig {
    /// Number of correction pairs kept by the quasi-Newton update.
    pub memory_size: usize,
    /// Relative finite-difference step: `h_j = grad_step * max(1, |x_j|)`.
    pub grad_step: f64,
    /// Stop when the projected gradient max-norm falls to this value.
    pub grad_tol: f64,
    /// Stop when `(f_k - f_{k+1}) / max(|f_k|, |f_{k+1}|, 1)` falls to this value.
    pub ftol_rel: f64,
    /// Iteration cap; `None` means 15·D (quasi-Newton) or 200·D (simplex).
    pub max_iters: Option<usize>,
    pub method: LocalMethod,
}

impl Default for LocalMinConfig {
    fn default() -> Self {
        Self {
            memory_size: 10,
            grad_step: f64::EPSILON.sqrt(),
            grad_tol: 1e-5,
            ftol_rel: 1e-10,
            max_iters: None,
            method: LocalMethod::QuasiNewtonBounded,
        }
    }
}

impl LocalMinConfig {
    pub fn simplex() -> Self {
        Self {
            method: LocalMethod::Simplex,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grad_step.is_nan() || self.grad_step <= 0.0 {
            return Err(Error::InvalidConfig("grad_step must be positive".into()));
        }
        if self.grad_tol < 0.0 || self.ftol_rel < 0.0 {
            return Err(Error::InvalidConfig("tolerances must be nonnegative".into()));
        }
        if self.memory_size == 0 {
            return Err(Error::InvalidConfig("memory_size must be at least 1".into()));
        }
        if self.max_iters == Some(0) {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn iteration_cap(&self, dim: usize) -> usize {
        self.max_iters.unwrap_or(match self.method {
            LocalMethod::QuasiNewtonBounded => 15 * dim,
            LocalMethod::Simplex => 200 * dim,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalMinResult {
    pub x_min: Vec<f64>,
    /// `+inf` only when not even the start point could be evaluated.
    pub f_min: f64,
    pub evals_spent: u64,
    pub converged: bool,
}

/// Minimizes from `x0` (clipped into the box first). Never errors: when the
/// evaluator halts, the best point evaluated so far is returned.
pub fn minimize(ev: &mut Evaluator<'_>, x0: &[f64], cfg: &LocalMinConfig) -> LocalMinResult {
    match cfg.method {
        LocalMethod::QuasiNewtonBounded => minimize_lbfgsb(ev, x0, cfg),
        LocalMethod::Simplex => minimize_simplex(ev, x0, cfg),
    }
}

/// Best point seen among non-probe evaluations.
pub(crate) struct BestPoint {
    pub x: Vec<f64>,
    pub f: f64,
}

impl BestPoint {
    pub fn new(x: &[f64]) -> Self {
        Self {
            x: x.to_vec(),
            f: f64::INFINITY,
        }
    }

    pub fn offer(&mut self, x: &[f64], f: f64) {
        if f < self.f {
            self.f = f;
            self.x.clear();
            self.x.extend_from_slice(x);
        }
    }

    pub fn into_result(self, start: u64, ev: &Evaluator<'_>, converged: bool) -> LocalMinResult {
        LocalMinResult {
            x_min: self.x,
            f_min: self.f,
            evals_spent: ev.used() - start,
            converged,
        }
    }
}

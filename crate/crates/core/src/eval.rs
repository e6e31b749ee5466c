//! Budget-accounted objective evaluation.
//!
//! [`Evaluator`] is the only path from an optimizer to the objective. Every
//! call, finite-difference probes included, costs exactly one unit of budget.

use crate::problem::Problem;
use crate::trajectory::Trajectory;

/// Evaluation budget and precision target of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalBudget {
    pub cap: u64,
    pub used: u64,
    pub target_error: f64,
}

impl EvalBudget {
    pub fn new(cap: u64, target_error: f64) -> Self {
        Self {
            cap,
            used: 0,
            target_error,
        }
    }

    pub fn remaining(&self) -> u64 {
        self.cap.saturating_sub(self.used)
    }
}

/// Why an evaluation was refused.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Halt {
    BudgetExhausted,
    TargetReached,
    /// The objective returned NaN or an infinity at this evaluation index.
    NonFinite {
        eval_index: u64,
    },
}

pub type EvalResult = std::result::Result<f64, Halt>;

pub struct Evaluator<'p> {
    problem: &'p Problem,
    budget: EvalBudget,
    stop_on_target: bool,
    trajectory: Trajectory,
    best_value: f64,
    best_x: Vec<f64>,
    halted: Option<Halt>,
    out_of_bounds: u64,
}

impl<'p> Evaluator<'p> {
    /// Runs stop on the first evaluation whose error reaches the target,
    /// when the problem has a known optimum.
    pub fn new(problem: &'p Problem, budget: EvalBudget) -> Self {
        Self {
            problem,
            budget,
            stop_on_target: true,
            trajectory: Trajectory::new(),
            best_value: f64::INFINITY,
            best_x: Vec::new(),
            halted: None,
            out_of_bounds: 0,
        }
    }

    pub fn stop_on_target(mut self, yes: bool) -> Self {
        self.stop_on_target = yes;
        self
    }

    pub fn problem(&self) -> &Problem {
        self.problem
    }

    pub fn dim(&self) -> usize {
        self.problem.dim()
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.budget
    }

    pub fn used(&self) -> u64 {
        self.budget.used
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn best_x(&self) -> &[f64] {
        &self.best_x
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn halt(&self) -> Option<Halt> {
        self.halted
    }

    /// True once no further evaluation will be granted.
    pub fn is_done(&self) -> bool {
        self.halted.is_some() || self.budget.used >= self.budget.cap
    }

    /// Number of evaluated points that were outside the problem bounds.
    pub fn out_of_bounds_count(&self) -> u64 {
        self.out_of_bounds
    }

    /// Error of a raw value against the known optimum, floored at the target.
    pub fn quality_of(&self, value: f64) -> f64 {
        match self.problem.known_optimum() {
            Some(opt) => (value - opt).max(0.0).max(self.budget.target_error),
            None => value,
        }
    }

    pub fn evaluate(&mut self, x: &[f64]) -> EvalResult {
        if let Some(h) = self.halted {
            return Err(h);
        }
        if self.budget.used >= self.budget.cap {
            self.halted = Some(Halt::BudgetExhausted);
            return Err(Halt::BudgetExhausted);
        }
        debug_assert_eq!(x.len(), self.dim());
        if !self.problem.bounds().contains(x) {
            self.out_of_bounds += 1;
        }
        let value = self.problem.value(x);
        self.budget.used += 1;
        let index = self.budget.used;
        if !value.is_finite() {
            let h = Halt::NonFinite { eval_index: index };
            self.halted = Some(h);
            return Err(h);
        }
        if value < self.best_value {
            self.best_value = value;
            self.best_x.clear();
            self.best_x.extend_from_slice(x);
            let q = self.quality_of(value);
            let improves = self.trajectory.last().is_none_or(|e| q < e.1);
            if improves {
                self.trajectory
                    .record_improvement(index, q)
                    .expect("strictly increasing index and quality");
            }
            if self.stop_on_target && self.problem.known_optimum().is_some() && q <= self.budget.target_error {
                self.halted = Some(Halt::TargetReached);
            }
        }
        Ok(value)
    }

    pub fn finish(mut self) -> EvalSummary {
        self.trajectory.final_evals = self.budget.used;
        EvalSummary {
            trajectory: self.trajectory,
            best_value: self.best_value,
            best_x: self.best_x,
            evals_used: self.budget.used,
            halt: self.halted,
            out_of_bounds: self.out_of_bounds,
        }
    }
}

/// What remains of an [`Evaluator`] after a run.
#[derive(Debug, Clone)]
pub struct EvalSummary {
    pub trajectory: Trajectory,
    pub best_value: f64,
    pub best_x: Vec<f64>,
    pub evals_used: u64,
    pub halt: Option<Halt>,
    pub out_of_bounds: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Bounds;

    fn sphere(dim: usize) -> Problem {
        Problem::new("sphere", Bounds::uniform(dim, -5.0, 5.0).unwrap(), |x: &[f64]| {
            x.iter().map(|v| v * v).sum()
        })
        .with_optimum(0.0)
    }

    #[test]
    fn counts_every_call() {
        let p = sphere(2);
        let mut ev = Evaluator::new(&p, EvalBudget::new(10, 1e-8));
        assert_eq!(ev.evaluate(&[1.0, 1.0]), Ok(2.0));
        assert_eq!(ev.used(), 1);
    }

    #[test]
    fn refuses_past_cap() {
        let p = sphere(2);
        let mut ev = Evaluator::new(&p, EvalBudget::new(1, 1e-8));
        ev.evaluate(&[1.0, 1.0]).unwrap();
        assert_eq!(ev.evaluate(&[1.0, 1.0]), Err(Halt::BudgetExhausted));
        assert_eq!(ev.used(), 1);
    }

    #[test]
    fn optimum_is_clipped_and_stops() {
        let p = sphere(3);
        let mut ev = Evaluator::new(&p, EvalBudget::new(100, 1e-8));
        ev.evaluate(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(ev.evaluate(&[0.0; 3]), Ok(0.0));
        assert!(ev.is_done());
        assert_eq!(ev.evaluate(&[0.0; 3]), Err(Halt::TargetReached));
        let s = ev.finish();
        assert_eq!(s.trajectory.events.last().unwrap().1, 1e-8);
        assert_eq!(s.trajectory.events.last().unwrap().0, 2);
        assert_eq!(s.trajectory.final_evals, 2);
    }

    #[test]
    fn non_finite_halts() {
        let p = Problem::new("nan", Bounds::uniform(1, -1.0, 1.0).unwrap(), |_x: &[f64]| f64::NAN);
        let mut ev = Evaluator::new(&p, EvalBudget::new(5, 0.0));
        assert_eq!(ev.evaluate(&[0.0]), Err(Halt::NonFinite { eval_index: 1 }));
        assert!(ev.is_done());
    }

    #[test]
    fn raw_values_without_optimum() {
        let p = Problem::new("neg", Bounds::uniform(1, -1.0, 1.0).unwrap(), |x: &[f64]| x[0] - 3.0);
        let mut ev = Evaluator::new(&p, EvalBudget::new(5, 1e-8));
        ev.evaluate(&[0.5]).unwrap();
        ev.evaluate(&[-0.5]).unwrap();
        ev.evaluate(&[0.0]).unwrap();
        let s = ev.finish();
        assert_eq!(s.trajectory.events.len(), 2);
        assert_eq!(s.trajectory.events[1].1, -3.5);
    }
}

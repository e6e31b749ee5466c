use super::{finish, IterationLog, RunOutcome};
use crate::error::Result;
use crate::eval::{EvalBudget, Evaluator};
use crate::problem::Problem;
use crate::rng::RngStream;

/// Uniform random sampling until the budget is spent; the timing baseline.
pub fn run_random_search(problem: &Problem, budget: EvalBudget, seed: u64) -> Result<RunOutcome> {
    let mut rng = RngStream::new(seed);
    let mut ev = Evaluator::new(problem, budget);
    while !ev.is_done() {
        let x = problem.bounds().sample(&mut rng);
        if ev.evaluate(&x).is_err() {
            break;
        }
    }
    Ok(finish(ev, None, IterationLog::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::Bounds;

    #[test]
    fn spends_exact_budget() {
        let p = Problem::new("s", Bounds::uniform(4, -1.0, 1.0).unwrap(), |x: &[f64]| x[0]);
        let out = run_random_search(&p, EvalBudget::new(321, 1e-8), 9).unwrap();
        assert_eq!(out.evals_used, 321);
        assert_eq!(out.trajectory.final_evals, 321);
        assert_eq!(out.out_of_bounds, 0);
    }
}

use crate::eval::{Evaluator, Halt};

/// Forward-difference gradient at `x`, where `f_x = f(x)` is already known.
///
/// Spends exactly one evaluation per coordinate. The step
/// `h_j = grad_step * max(1, |x_j|)` is taken towards the interior when
/// `x_j + h_j` would leave the box, so every probe is feasible.
pub fn fd_gradient(ev: &mut Evaluator<'_>, x: &[f64], f_x: f64, grad_step: f64) -> Result<Vec<f64>, Halt> {
    let bounds = ev.problem().bounds().clone();
    let mut probe = x.to_vec();
    let mut g = vec![0.0; x.len()];
    for j in 0..x.len() {
        let mut h = grad_step * x[j].abs().max(1.0);
        if x[j] + h > bounds.upper()[j] {
            h = -h;
            if x[j] + h < bounds.lower()[j] {
                // box narrower than the step: use the roomier side
                let up = bounds.upper()[j] - x[j];
                let down = x[j] - bounds.lower()[j];
                h = if up >= down { up } else { -down };
            }
        }
        probe[j] = x[j] + h;
        // the realised step avoids representation error in x + h
        let h_eff = probe[j] - x[j];
        let f_probe = ev.evaluate(&probe)?;
        g[j] = if h_eff != 0.0 { (f_probe - f_x) / h_eff } else { 0.0 };
        probe[j] = x[j];
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::EvalBudget;
    use crate::problem::{Bounds, Problem};

    fn problem<F: Fn(&[f64]) -> f64 + Send + Sync + 'static>(dim: usize, f: F) -> Problem {
        Problem::new("t", Bounds::uniform(dim, -5.0, 5.0).unwrap(), f)
    }

    #[test]
    fn square_derivative() {
        let p = problem(1, |x: &[f64]| x[0] * x[0]);
        let mut ev = Evaluator::new(&p, EvalBudget::new(10, 0.0));
        let g = fd_gradient(&mut ev, &[1.0], 1.0, 1e-6).unwrap();
        assert!((g[0] - 2.0).abs() < 1e-4);
        assert!((g[0] - 2.000001).abs() < 1e-8);
        assert_eq!(ev.used(), 1);
    }

    #[test]
    fn constant_is_flat() {
        let p = problem(3, |_x: &[f64]| 7.0);
        let mut ev = Evaluator::new(&p, EvalBudget::new(10, 0.0));
        let g = fd_gradient(&mut ev, &[0.1, 0.2, 0.3], 7.0, 1.5e-8).unwrap();
        assert!(g.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn sum_of_squares() {
        let p = problem(3, |x: &[f64]| x.iter().map(|v| v * v).sum());
        let x = [1.0, 2.0, 3.0];
        let mut ev = Evaluator::new(&p, EvalBudget::new(10, 0.0));
        let g = fd_gradient(&mut ev, &x, 14.0, f64::EPSILON.sqrt()).unwrap();
        for (gj, xj) in g.iter().zip(&x) {
            assert!((gj - 2.0 * xj).abs() <= 1e-4 * (2.0 * xj));
        }
        assert_eq!(ev.used(), 3);
    }

    #[test]
    fn flips_at_upper_bound() {
        let p = problem(1, |x: &[f64]| x[0] * x[0]);
        let mut ev = Evaluator::new(&p, EvalBudget::new(10, 0.0));
        let g = fd_gradient(&mut ev, &[5.0], 25.0, 1e-7).unwrap();
        assert!((g[0] - 10.0).abs() < 1e-4);
        assert_eq!(ev.out_of_bounds_count(), 0);
    }

    #[test]
    fn halts_mid_gradient() {
        let p = problem(4, |x: &[f64]| x.iter().sum());
        let mut ev = Evaluator::new(&p, EvalBudget::new(2, 0.0));
        assert_eq!(fd_gradient(&mut ev, &[0.0; 4], 0.0, 1e-6), Err(Halt::BudgetExhausted));
        assert_eq!(ev.used(), 2);
    }
}

//! Limited-memory BFGS on a box.
//!
//! Variables sitting on a bound with the gradient pushing outwards are frozen
//! for the iteration; the two-loop direction is computed on the free set and
//! the trial point is projected back onto the box. Armijo backtracking starts
//! from `1/||d||` while no curvature information is stored and from 1 otherwise.

use std::collections::VecDeque;

use super::{fd_gradient, BestPoint, LocalMinConfig, LocalMinResult};
use crate::eval::Evaluator;

const ARMIJO_C: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;

struct Correction {
    s: Vec<f64>,
    y: Vec<f64>,
    rho: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `-H g` restricted to the free coordinates.
fn search_direction(g: &[f64], free: &[bool], history: &VecDeque<Correction>) -> Vec<f64> {
    let mut q: Vec<f64> = g.iter().zip(free).map(|(gj, f)| if *f { *gj } else { 0.0 }).collect();
    let mut alphas = Vec::with_capacity(history.len());
    for c in history.iter().rev() {
        let a = c.rho * dot(&c.s, &q);
        for (qj, yj) in q.iter_mut().zip(&c.y) {
            *qj -= a * yj;
        }
        alphas.push(a);
    }
    if let Some(last) = history.back() {
        let gamma = dot(&last.s, &last.y) / dot(&last.y, &last.y);
        for qj in q.iter_mut() {
            *qj *= gamma;
        }
    }
    for (c, a) in history.iter().zip(alphas.iter().rev()) {
        let b = c.rho * dot(&c.y, &q);
        for (qj, sj) in q.iter_mut().zip(&c.s) {
            *qj += sj * (a - b);
        }
    }
    q.iter().zip(free).map(|(v, f)| if *f { -v } else { 0.0 }).collect()
}

pub fn minimize_lbfgsb(ev: &mut Evaluator<'_>, x0: &[f64], cfg: &LocalMinConfig) -> LocalMinResult {
    let start = ev.used();
    let bounds = ev.problem().bounds().clone();
    let (lower, upper) = (bounds.lower(), bounds.upper());
    let n = x0.len();
    let mut x = x0.to_vec();
    bounds.clip_in_place(&mut x);
    let mut best = BestPoint::new(&x);

    let mut f = match ev.evaluate(&x) {
        Ok(v) => v,
        Err(_) => return best.into_result(start, ev, false),
    };
    best.offer(&x, f);
    let mut g = match fd_gradient(ev, &x, f, cfg.grad_step) {
        Ok(g) => g,
        Err(_) => return best.into_result(start, ev, false),
    };

    let mut history: VecDeque<Correction> = VecDeque::with_capacity(cfg.memory_size);
    let mut free = vec![true; n];
    let mut trial = vec![0.0; n];
    let mut converged = false;

    for _ in 0..cfg.iteration_cap(n) {
        let mut pg_norm = 0.0_f64;
        for j in 0..n {
            let blocked = (x[j] <= lower[j] && g[j] > 0.0) || (x[j] >= upper[j] && g[j] < 0.0);
            free[j] = !blocked;
            if !blocked {
                pg_norm = pg_norm.max(g[j].abs());
            }
        }
        if pg_norm <= cfg.grad_tol {
            converged = true;
            break;
        }

        let mut accepted = None;
        // second pass only after a failed search with stored curvature pairs
        for _attempt in 0..2 {
            let mut d = search_direction(&g, &free, &history);
            if dot(&g, &d) >= 0.0 {
                history.clear();
                d = search_direction(&g, &free, &history);
            }
            let d_norm = dot(&d, &d).sqrt();
            let mut alpha = if history.is_empty() { 1.0 / d_norm } else { 1.0 };
            for _ in 0..MAX_BACKTRACKS {
                for j in 0..n {
                    trial[j] = (x[j] + alpha * d[j]).max(lower[j]).min(upper[j]);
                }
                let mut moved = false;
                let mut decrease = 0.0;
                for j in 0..n {
                    let step = trial[j] - x[j];
                    moved |= step != 0.0;
                    decrease += g[j] * step;
                }
                if !moved {
                    break;
                }
                let ft = match ev.evaluate(&trial) {
                    Ok(v) => v,
                    Err(_) => return best.into_result(start, ev, false),
                };
                best.offer(&trial, ft);
                if decrease < 0.0 && ft <= f + ARMIJO_C * decrease {
                    accepted = Some(ft);
                    break;
                }
                alpha *= 0.5;
            }
            if accepted.is_some() || history.is_empty() {
                break;
            }
            history.clear();
        }

        let Some(f_new) = accepted else {
            break;
        };
        let s: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
        let f_old = f;
        x.copy_from_slice(&trial);
        f = f_new;
        if (f_old - f) / f_old.abs().max(f.abs()).max(1.0) <= cfg.ftol_rel {
            converged = true;
            break;
        }
        let g_new = match fd_gradient(ev, &x, f, cfg.grad_step) {
            Ok(g) => g,
            Err(_) => return best.into_result(start, ev, false),
        };
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        let yy = dot(&y, &y);
        if sy > f64::EPSILON * yy && sy > 0.0 {
            if history.len() == cfg.memory_size {
                history.pop_front();
            }
            history.push_back(Correction { s, y, rho: 1.0 / sy });
        }
        g = g_new;
    }

    best.into_result(start, ev, converged)
}

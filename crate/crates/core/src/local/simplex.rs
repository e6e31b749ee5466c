//! Nelder-Mead with reflection 1, expansion 2, contraction 1/2 and shrink 1/2.
//! Trial points are clipped into the box.

use super::{BestPoint, LocalMinConfig, LocalMinResult};
use crate::eval::{EvalResult, Evaluator};

const INITIAL_STEP: f64 = 0.05;

pub fn minimize_simplex(ev: &mut Evaluator<'_>, x0: &[f64], cfg: &LocalMinConfig) -> LocalMinResult {
    let start = ev.used();
    let bounds = ev.problem().bounds().clone();
    let n = x0.len();
    let mut origin = x0.to_vec();
    bounds.clip_in_place(&mut origin);
    let mut best = BestPoint::new(&origin);

    let eval = |ev: &mut Evaluator<'_>, p: &[f64], best: &mut BestPoint| -> EvalResult {
        let v = ev.evaluate(p)?;
        best.offer(p, v);
        Ok(v)
    };

    let mut verts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    match eval(ev, &origin, &mut best) {
        Ok(v) => verts.push((origin.clone(), v)),
        Err(_) => return best.into_result(start, ev, false),
    }
    for j in 0..n {
        let mut p = origin.clone();
        let step = INITIAL_STEP * bounds.width(j);
        p[j] = if p[j] + step <= bounds.upper()[j] {
            p[j] + step
        } else {
            p[j] - step
        };
        match eval(ev, &p, &mut best) {
            Ok(v) => verts.push((p, v)),
            Err(_) => return best.into_result(start, ev, false),
        }
    }

    let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        let mut p: Vec<f64> = a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect();
        bounds.clip_in_place(&mut p);
        p
    };

    let mut converged = false;
    for _ in 0..cfg.iteration_cap(n) {
        verts.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (f_best, f_worst) = (verts[0].1, verts[n].1);
        if (f_worst - f_best).abs() <= cfg.ftol_rel * f_best.abs().max(1.0) {
            converged = true;
            break;
        }
        let mut centroid = vec![0.0; n];
        for (p, _) in &verts[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }
        let worst = verts[n].0.clone();
        let step = (|| -> Result<(), crate::eval::Halt> {
            let xr = blend(&centroid, &worst, -1.0);
            let fr = eval(ev, &xr, &mut best)?;
            if fr < verts[0].1 {
                let xe = blend(&centroid, &worst, -2.0);
                let fe = eval(ev, &xe, &mut best)?;
                verts[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < verts[n - 1].1 {
                verts[n] = (xr, fr);
            } else {
                let (xc, fc) = if fr < verts[n].1 {
                    let xc = blend(&centroid, &xr, 0.5);
                    let fc = eval(ev, &xc, &mut best)?;
                    (xc, fc)
                } else {
                    let xc = blend(&centroid, &worst, 0.5);
                    let fc = eval(ev, &xc, &mut best)?;
                    (xc, fc)
                };
                if fc < fr.min(verts[n].1) {
                    verts[n] = (xc, fc);
                } else {
                    let anchor = verts[0].0.clone();
                    for v in verts.iter_mut().skip(1) {
                        let p = blend(&anchor, &v.0, 0.5);
                        let fp = eval(ev, &p, &mut best)?;
                        *v = (p, fp);
                    }
                }
            }
            Ok(())
        })();
        if step.is_err() {
            return best.into_result(start, ev, false);
        }
    }
    best.into_result(start, ev, converged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::EvalBudget;
    use crate::problem::{Bounds, Problem};

    #[test]
    fn quadratic() {
        let p = Problem::new("q", Bounds::uniform(3, -5.0, 5.0).unwrap(), |x: &[f64]| {
            x.iter().map(|v| (v - 1.0).powi(2)).sum()
        });
        let mut ev = Evaluator::new(&p, EvalBudget::new(20_000, 0.0)).stop_on_target(false);
        let r = minimize_simplex(&mut ev, &[-3.0, 4.0, 0.0], &LocalMinConfig::simplex());
        assert!(r.f_min < 1e-6, "{}", r.f_min);
        assert_eq!(ev.out_of_bounds_count(), 0);
    }

    #[test]
    fn respects_bounds_at_corner() {
        let p = Problem::new("lin", Bounds::uniform(2, -1.0, 1.0).unwrap(), |x: &[f64]| x[0] + x[1]);
        let mut ev = Evaluator::new(&p, EvalBudget::new(5_000, 0.0)).stop_on_target(false);
        let r = minimize_simplex(&mut ev, &[0.9, 0.9], &LocalMinConfig::simplex());
        assert!(r.f_min < -1.99, "{}", r.f_min);
        assert_eq!(ev.out_of_bounds_count(), 0);
    }
}

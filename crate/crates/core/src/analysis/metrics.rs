//! Fixed-budget and fixed-target performance measures over trajectories.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trajectory::Trajectory;

pub const DEFAULT_BUDGETS: [u64; 5] = [1_000, 10_000, 50_000, 100_000, 200_000];
pub const DEFAULT_TARGETS: [f64; 5] = [1e-8, 1e-4, 0.01, 0.1, 1.0];

/// Best error reached within the first `budget` evaluations.
pub fn error_at_budget(traj: &Trajectory, budget: u64) -> Result<f64> {
    if traj.events.is_empty() {
        return Err(Error::Trajectory("empty trajectory".into()));
    }
    let k = traj.events.partition_point(|e| e.0 <= budget);
    if k == 0 {
        return Err(Error::Trajectory(format!(
            "no event within budget {budget}; first event at {}",
            traj.events[0].0
        )));
    }
    Ok(traj.events[k - 1].1)
}

/// First evaluation index whose best error is at or below `target`; `None` when never reached.
pub fn hitting_time(traj: &Trajectory, target: f64) -> Option<u64> {
    traj.events.iter().find(|e| e.1 <= target).map(|e| e.0)
}

/// `ln(v / best)`. Fails when `v < best` or either is not positive.
pub fn logscore(v: f64, best: f64) -> Result<f64> {
    if best.is_nan() || v.is_nan() || best <= 0.0 || v <= 0.0 {
        return Err(Error::Analysis(format!(
            "logscore needs positive errors, got v={v}, best={best}"
        )));
    }
    if v < best {
        return Err(Error::Analysis(format!("error {v} below the reference best {best}")));
    }
    Ok((v / best).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub sr: f64,
    pub ar: f64,
    /// `None` stands for an infinite expected running time.
    pub ert: Option<f64>,
}

/// Success rate, average running time `mean(min(T, cap))` and `ERT = AR / SR`.
pub fn sr_ar_ert(times: &[Option<u64>], cap: u64) -> Result<RuntimeStats> {
    if times.is_empty() {
        return Err(Error::Analysis("no runs to summarize".into()));
    }
    let n = times.len() as f64;
    let hits = times.iter().filter(|t| t.is_some()).count() as f64;
    let ar = times.iter().map(|t| t.map_or(cap, |v| v.min(cap)) as f64).sum::<f64>() / n;
    let sr = hits / n;
    Ok(RuntimeStats {
        sr,
        ar,
        ert: (hits > 0.0).then(|| ar / sr),
    })
}

/// Log-spaced evaluation grid from 1 to `cap` with `per_decade` points per decade.
pub fn log_grid(cap: u64, per_decade: usize) -> Vec<u64> {
    let mut grid = Vec::new();
    let top = (cap.max(1) as f64).log10();
    let steps = (top * per_decade as f64).ceil() as usize;
    for i in 0..=steps {
        let v = 10f64.powf(i as f64 / per_decade as f64).round() as u64;
        let v = v.min(cap.max(1));
        if grid.last() != Some(&v) {
            grid.push(v);
        }
    }
    if grid.last() != Some(&cap.max(1)) {
        grid.push(cap.max(1));
    }
    grid
}

/// Fraction of `(target, run)` pairs solved within each grid budget.
pub fn ecdf_curve(trajs: &[Trajectory], targets: &[f64], grid: &[u64]) -> Result<Vec<(u64, f64)>> {
    if trajs.is_empty() || targets.is_empty() {
        return Err(Error::Analysis("ECDF needs runs and targets".into()));
    }
    let mut times: Vec<u64> = Vec::new();
    let mut pairs = 0usize;
    for t in trajs {
        for &target in targets {
            pairs += 1;
            if let Some(h) = hitting_time(t, target) {
                times.push(h);
            }
        }
    }
    times.sort_unstable();
    Ok(grid
        .iter()
        .map(|&e| (e, times.partition_point(|h| *h <= e) as f64 / pairs as f64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::Event;

    fn traj(ev: &[(u64, f64)]) -> Trajectory {
        Trajectory {
            events: ev.iter().map(|&(i, e)| Event(i, e)).collect(),
            final_evals: ev.last().map_or(0, |e| e.0),
        }
    }

    #[test]
    fn budget_lookup() {
        let t = traj(&[(1, 5.0), (10, 1.0)]);
        assert_eq!(error_at_budget(&t, 9).unwrap(), 5.0);
        assert_eq!(error_at_budget(&t, 10).unwrap(), 1.0);
        assert_eq!(error_at_budget(&t, 10_000).unwrap(), 1.0);
        assert!(error_at_budget(&traj(&[]), 5).is_err());
    }

    #[test]
    fn logscore_values() {
        assert_eq!(logscore(3.0, 3.0).unwrap(), 0.0);
        assert!((logscore(std::f64::consts::E.powi(2), 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((logscore(1e-6, 1e-8).unwrap() - 100f64.ln()).abs() < 1e-12);
        assert!(logscore(1.0, 2.0).is_err());
    }

    #[test]
    fn hitting() {
        let t = traj(&[(1, 5.0), (10, 0.005)]);
        assert_eq!(hitting_time(&t, 0.01), Some(10));
        assert_eq!(hitting_time(&t, 1e-3), None);
        assert_eq!(hitting_time(&t, 5.0), Some(1));
    }

    #[test]
    fn runtime_stats() {
        let s = sr_ar_ert(&[Some(100), Some(200), Some(300), Some(400)], 1000).unwrap();
        assert_eq!((s.sr, s.ar, s.ert), (1.0, 250.0, Some(250.0)));
        let s = sr_ar_ert(&[Some(100), None], 1000).unwrap();
        assert_eq!((s.sr, s.ar, s.ert), (0.5, 550.0, Some(1100.0)));
        let s = sr_ar_ert(&[None, None], 1000).unwrap();
        assert_eq!((s.sr, s.ar, s.ert), (0.0, 1000.0, None));
    }

    #[test]
    fn ecdf_counts_pairs() {
        let a = traj(&[(1, 1.0), (5, 0.05), (20, 1e-5)]);
        let b = traj(&[(1, 2.0), (8, 0.5)]);
        let curve = ecdf_curve(&[a, b], &DEFAULT_TARGETS, &[1, 5, 8, 20]).unwrap();
        // a hits 1 at 1, 0.1 at 5, 0.01 and 1e-4 at 20; b hits 1 at 8
        assert_eq!(curve, vec![(1, 0.1), (5, 0.2), (8, 0.3), (20, 0.5)]);
        let none = ecdf_curve(&[traj(&[(1, 10.0)])], &DEFAULT_TARGETS, &[1, 100]).unwrap();
        assert!(none.iter().all(|p| p.1 == 0.0));
    }

    #[test]
    fn grid_shape() {
        let g = log_grid(200_000, 5);
        assert_eq!(g[0], 1);
        assert_eq!(*g.last().unwrap(), 200_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}

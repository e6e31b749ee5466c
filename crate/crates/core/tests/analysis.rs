use hopbench_core::analysis::{
    benjamini_hochberg, ecdf_curve, friedman_conover, hitting_time, log_grid, logscore, mann_whitney_u, rank_cliques,
    sr_ar_ert, wilcoxon_signed_rank,
};
use hopbench_core::optimizers::roulette_select;
use hopbench_core::{Event, RngStream, Trajectory};
use proptest::prelude::*;

fn two_sided(dist: &[f64], stat: f64) -> f64 {
    let n = dist.len() as f64;
    let lo = dist.iter().filter(|&&s| s <= stat + 1e-9).count() as f64 / n;
    let hi = dist.iter().filter(|&&s| s >= stat - 1e-9).count() as f64 / n;
    (2.0 * lo.min(hi)).min(1.0)
}

fn subsets_u(n: usize, m: usize) -> Vec<f64> {
    let total = n + m;
    (0u32..1 << total)
        .filter(|mask| mask.count_ones() as usize == n)
        .map(|mask| {
            let rank_sum: usize = (0..total).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
            (rank_sum - n * (n + 1) / 2) as f64
        })
        .collect()
}

#[test]
fn roulette_frequency_within_three_sigma() {
    let values = [0.0, 2.0, 3.0, 5.0];
    let (worst, best) = (5.0, 0.0);
    let delta = 1e-12 + 1e-6 * (worst - best);
    let w: Vec<f64> = values.iter().map(|v| worst - v + delta).collect();
    let total: f64 = w.iter().sum();
    let mut rng = RngStream::new(99);
    let draws = 100_000;
    let mut hits = [0usize; 4];
    for _ in 0..draws {
        hits[roulette_select(&values, &mut rng)] += 1;
    }
    for (i, h) in hits.iter().enumerate() {
        let p = w[i] / total;
        let sd = (draws as f64 * p * (1.0 - p)).sqrt();
        let diff = (*h as f64 - draws as f64 * p).abs();
        assert!(diff <= 3.0 * sd.max(1.0), "member {i}: {h} draws vs p={p}");
    }
}

#[test]
fn adjustment_example() {
    assert_eq!(benjamini_hochberg(&[0.01, 0.03, 0.04]), vec![0.03, 0.04, 0.04]);
    assert_eq!(benjamini_hochberg(&[0.04, 0.01, 0.03]), vec![0.04, 0.03, 0.04]);
}

#[test]
fn identical_blocks_give_no_evidence() {
    let f = friedman_conover(&vec![vec![1.0; 3]; 4], 0.05).unwrap();
    assert_eq!(f.omnibus.statistic, 0.0);
    assert_eq!(f.omnibus.p_value, 1.0);
    assert!(f.pairwise.is_empty());
    assert_eq!(rank_cliques(&f, 0.05), vec![vec![0, 1, 2]]);
}

#[test]
fn consistent_ordering_is_detected() {
    let blocks: Vec<Vec<f64>> = (0..12)
        .map(|b| vec![b as f64, b as f64 + 1.0, b as f64 + 5.0])
        .collect();
    let f = friedman_conover(&blocks, 0.05).unwrap();
    assert_eq!(f.average_ranks, vec![1.0, 2.0, 3.0]);
    assert!((f.omnibus.statistic - 24.0).abs() < 1e-12);
    assert!(f.differ(0, 2, 0.05));
}

#[test]
fn grid_and_logscore_edges() {
    assert_eq!(log_grid(100, 1), vec![1, 10, 100]);
    assert_eq!(logscore(2.0, 2.0).unwrap(), 0.0);
    assert!(logscore(1.0, 2.0).is_err());
    assert!(sr_ar_ert(&[], 10).is_err());
}

fn trajectory() -> impl Strategy<Value = Trajectory> {
    (prop::collection::vec((1u64..50, 0.0f64..0.95), 0..25), 1.0f64..1e4).prop_map(|(steps, start)| {
        let mut t = Trajectory::new();
        let (mut e, mut best) = (0u64, start);
        for (gap, shrink) in steps {
            e += gap;
            t.record_improvement(e, best).unwrap();
            best *= shrink;
        }
        t.final_evals = e;
        t
    })
}

proptest! {
    #[test]
    fn exact_mwu_matches_enumeration(a in prop::collection::vec(-10.0f64..10.0, 1..7),
                                     b in prop::collection::vec(-10.0f64..10.0, 1..7)) {
        let pooled: Vec<f64> = a.iter().chain(&b).copied().collect();
        let mut sorted = pooled.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assume!(sorted.windows(2).all(|w| w[0] < w[1]));
        let res = mann_whitney_u(&a, &b).unwrap();
        let want = two_sided(&subsets_u(a.len(), b.len()), res.statistic);
        prop_assert!((res.p_value - want).abs() <= 1e-12);
        let u_pairs = a.iter().map(|x| b.iter().filter(|y| x > *y).count()).sum::<usize>() as f64;
        prop_assert_eq!(res.statistic, u_pairs);
    }

    #[test]
    fn exact_wilcoxon_matches_enumeration(d in prop::collection::vec(-5i32..=5, 1..9)) {
        let d: Vec<f64> = d.into_iter().map(f64::from).collect();
        let nz: Vec<f64> = d.iter().copied().filter(|v| *v != 0.0).collect();
        let res = wilcoxon_signed_rank(&d).unwrap();
        if nz.is_empty() {
            prop_assert_eq!(res.p_value, 1.0);
        } else {
            let ranks: Vec<f64> = nz.iter().map(|x| {
                let below = nz.iter().filter(|y| y.abs() < x.abs()).count() as f64;
                let tied = nz.iter().filter(|y| y.abs() == x.abs()).count() as f64;
                below + (tied + 1.0) / 2.0
            }).collect();
            let dist: Vec<f64> = (0u32..1 << nz.len())
                .map(|m| (0..nz.len()).filter(|i| m >> i & 1 == 1).map(|i| ranks[i]).sum())
                .collect();
            prop_assert!((res.p_value - two_sided(&dist, res.statistic)).abs() <= 1e-12);
        }
    }

    #[test]
    fn adjusted_p_dominates_and_keeps_order(p in prop::collection::vec(0.0f64..=1.0, 1..30)) {
        let adj = benjamini_hochberg(&p);
        for i in 0..p.len() {
            prop_assert!(adj[i] >= p[i] && adj[i] <= 1.0);
            for j in 0..p.len() {
                if p[i] < p[j] {
                    prop_assert!(adj[i] <= adj[j]);
                }
            }
        }
    }

    #[test]
    fn friedman_ignores_monotone_transforms(blocks in prop::collection::vec(prop::collection::vec(0.0f64..10.0, 4), 3..10)) {
        let a = friedman_conover(&blocks, 0.05).unwrap();
        let mapped: Vec<Vec<f64>> = blocks.iter().map(|r| r.iter().map(|v| (v * 0.5).exp() + 3.0).collect()).collect();
        let b = friedman_conover(&mapped, 0.05).unwrap();
        prop_assert_eq!(&a.average_ranks, &b.average_ranks);
        prop_assert!((a.omnibus.statistic - b.omnibus.statistic).abs() <= 1e-9);
        let sum: f64 = a.average_ranks.iter().sum();
        prop_assert!((sum - 10.0).abs() < 1e-9);
    }

    #[test]
    fn ecdf_is_monotone_and_bounded(trajs in prop::collection::vec(trajectory(), 1..8)) {
        let grid = log_grid(2_000, 4);
        let curve = ecdf_curve(&trajs, &[100.0, 1.0, 1e-2], &grid).unwrap();
        prop_assert!(curve.windows(2).all(|w| w[0].1 <= w[1].1));
        prop_assert!(curve.iter().all(|c| (0.0..=1.0).contains(&c.1)));
    }

    #[test]
    fn ert_is_at_least_ar(trajs in prop::collection::vec(trajectory(), 1..10), target in 1e-3f64..1e3) {
        let cap = 2_000;
        let times: Vec<Option<u64>> = trajs.iter().map(|t| hitting_time(t, target)).collect();
        let s = sr_ar_ert(&times, cap).unwrap();
        prop_assert!((0.0..=1.0).contains(&s.sr));
        prop_assert!(s.ar <= cap as f64);
        match s.ert {
            Some(e) => prop_assert!(e >= s.ar),
            None => prop_assert_eq!(s.sr, 0.0),
        }
    }

    #[test]
    fn hitting_time_is_first_crossing(t in trajectory(), target in 0.0f64..1e4) {
        match hitting_time(&t, target) {
            Some(h) => {
                let at: Vec<&Event> = t.events.iter().filter(|e| e.0 <= h).collect();
                prop_assert!(at.last().unwrap().1 <= target);
                prop_assert!(at[..at.len() - 1].iter().all(|e| e.1 > target));
            }
            None => prop_assert!(t.events.iter().all(|e| e.1 > target)),
        }
    }

    #[test]
    fn logscore_is_nonnegative(best in 1e-12f64..1e6, ratio in 1.0f64..1e6) {
        let v = logscore(best * ratio, best).unwrap();
        prop_assert!(v >= 0.0);
    }
}

use hopbench_core::optimizers::{
    binomial_crossover, default_lambda, mutant_curr_to_best_1, mutant_rand_1, pso_velocity, run_bh, run_bhpop,
    run_cmaes, run_pbh, BHConfig, BHPOPConfig, CMAESConfig, PBHConfig, PSOConfig,
};
use hopbench_core::{make_instance, Bounds, EvalBudget, OptimizerConfig, Problem, RngStream, RunStatus};
use proptest::prelude::*;

fn shifted_sphere(dim: usize) -> Problem {
    Problem::new("sphere", Bounds::uniform(dim, -5.0, 5.0).unwrap(), |x: &[f64]| {
        x.iter().enumerate().map(|(i, v)| (v - 0.1 * i as f64).powi(2)).sum()
    })
    .with_optimum(0.0)
}

fn all_algorithms() -> Vec<OptimizerConfig> {
    OptimizerConfig::NAMES.iter().map(|n| n.parse().unwrap()).collect()
}

#[test]
fn bh_solves_convex_quadratic_quickly() {
    let p = shifted_sphere(10);
    let out = run_bh(&p, EvalBudget::new(5_000, 1e-8), 1, &BHConfig::default()).unwrap();
    assert_eq!(out.status, RunStatus::TargetReached);
    assert!(out.evals_used < 1_000, "{}", out.evals_used);
}

#[test]
fn cap_of_one_spends_one_evaluation() {
    let p = shifted_sphere(3);
    for cfg in all_algorithms() {
        let out = cfg.run(&p, EvalBudget::new(1, 1e-8), 4).unwrap();
        assert_eq!(out.evals_used, 1, "{}", cfg.name());
        assert_eq!(out.trajectory.events.len(), 1, "{}", cfg.name());
        assert_eq!(out.trajectory.events[0].0, 1);
    }
}

#[test]
fn one_member_population_is_plain_bh() {
    let p = make_instance(15, 4, 2).unwrap().without_optimum();
    let bh = run_bh(&p, EvalBudget::new(3_000, 0.0), 21, &BHConfig::default()).unwrap();
    let pop = BHPOPConfig {
        pop_size: Some(1),
        ..BHPOPConfig::default()
    };
    let bhpop = run_bhpop(&p, EvalBudget::new(3_000, 0.0), 21, &pop).unwrap();
    assert_eq!(bh.trajectory, bhpop.trajectory);
    assert_eq!(bh.best_x, bhpop.best_x);
}

#[test]
fn one_member_pbh_descends() {
    let p = make_instance(3, 4, 1).unwrap().without_optimum();
    let cfg = PBHConfig {
        pop_size: Some(1),
        ..PBHConfig::default()
    };
    let out = run_pbh(&p, EvalBudget::new(3_000, 0.0), 2, &cfg).unwrap();
    assert_eq!(out.evals_used, 3_000);
    assert!(out.log.values.windows(2).all(|w| w[1] <= w[0]));
    assert!(out.log.pop_sizes.iter().all(|&n| n == 1));
}

#[test]
fn de_mutation_formulas() {
    let z = mutant_rand_1(&[0.0, 0.0], &[1.0, 2.0], &[1.0, 0.0], 0.8);
    assert_eq!(z, vec![0.0, 1.6]);
    assert_eq!(
        mutant_rand_1(&[3.0, -1.0], &[9.0, 9.0], &[1.0, 1.0], 0.0),
        vec![3.0, -1.0]
    );
    let z = mutant_curr_to_best_1(&[1.0, 1.0], &[2.0, 3.0], &[1.0, 0.0], &[0.0, 0.0], 0.5);
    assert_eq!(z, vec![2.0, 2.0]);
}

#[test]
fn crossover_keeps_forced_index() {
    let mut rng = RngStream::new(3);
    let x = [0.0; 6];
    let z = [1.0; 6];
    for forced in 0..6 {
        let none = binomial_crossover(&x, &z, 0.0, forced, &mut rng);
        let expect: Vec<f64> = (0..6).map(|j| if j == forced { 1.0 } else { 0.0 }).collect();
        assert_eq!(none, expect);
        assert_eq!(binomial_crossover(&x, &z, 1.0, forced, &mut rng), z.to_vec());
    }
}

#[test]
fn pso_jump_to_global_best() {
    let cfg = PSOConfig {
        omega: 0.0,
        c1: 0.0,
        c2: 1.0,
        ..PSOConfig::default()
    };
    let x = [0.3, -0.2, 4.0];
    let g = [1.0, 1.0, 1.0];
    let mut v = vec![7.0; 3];
    pso_velocity(&mut v, &x, &x, &g, &cfg, 0.4, 1.0);
    let next: Vec<f64> = x.iter().zip(&v).map(|(a, b)| a + b).collect();
    for (a, b) in next.iter().zip(&g) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn cmaes_default_sample_size() {
    assert_eq!(default_lambda(10), 58);
    assert_eq!(default_lambda(2), 6);
    let p = shifted_sphere(10);
    let out = run_cmaes(&p, EvalBudget::new(58, 0.0), 0, &CMAESConfig::default()).unwrap();
    assert_eq!(out.log.values.len(), 1);
}

#[test]
fn cmaes_unit_recombination_moves_to_the_sample() {
    let p = shifted_sphere(3);
    let cfg = CMAESConfig {
        lambda: Some(1),
        mu: Some(1),
        ..CMAESConfig::default()
    };
    let out = run_cmaes(&p, EvalBudget::new(500, 0.0), 8, &cfg).unwrap();
    assert_eq!(out.evals_used, 500);
    assert_eq!(out.log.values.len(), 500);
}

#[test]
fn bh_budget_includes_gradient_probes() {
    let p = shifted_sphere(8);
    // value plus one probe per coordinate before the first step
    let out = run_bh(&p, EvalBudget::new(9, 0.0), 0, &BHConfig::default()).unwrap();
    assert_eq!(out.evals_used, 9);
    assert_eq!(out.trajectory.final_evals, 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn runs_respect_budget_bounds_and_seed(
        fn_id in 1u32..=24,
        dim in prop::sample::select(vec![2usize, 5, 10]),
        algo in 0usize..OptimizerConfig::NAMES.len(),
        cap in 1u64..2_500,
        seed in any::<u64>(),
    ) {
        let p = make_instance(fn_id, dim, 1).unwrap().without_optimum();
        let cfg: OptimizerConfig = OptimizerConfig::NAMES[algo].parse().unwrap();
        let a = cfg.run(&p, EvalBudget::new(cap, 0.0), seed).unwrap();
        let b = cfg.run(&p, EvalBudget::new(cap, 0.0), seed).unwrap();
        prop_assert_eq!(a.evals_used, cap);
        prop_assert_eq!(a.out_of_bounds, 0);
        prop_assert_eq!(&a.trajectory, &b.trajectory);
        prop_assert_eq!(&a.best_x, &b.best_x);
        prop_assert!(a.trajectory.validate().is_ok());
        prop_assert!(p.bounds().contains(&a.best_x));
        prop_assert_eq!(a.trajectory.last().unwrap().1, a.best_seen);
    }

    #[test]
    fn target_stop_lands_on_hitting_evaluation(seed in any::<u64>(), algo in 0usize..6) {
        let p = shifted_sphere(4);
        let cfg: OptimizerConfig = OptimizerConfig::NAMES[algo].parse().unwrap();
        let out = cfg.run(&p, EvalBudget::new(20_000, 1e-3), seed).unwrap();
        if out.status == RunStatus::TargetReached {
            let last = out.trajectory.last().unwrap();
            prop_assert!(last.1 <= 1e-3);
            prop_assert_eq!(last.0, out.evals_used);
        } else {
            prop_assert_eq!(out.evals_used, 20_000);
        }
    }
}

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopbench_bench::{cluster_problem, sample_points, samples, suite_problem};
use hopbench_core::analysis::{friedman_conover, mann_whitney_u, wilcoxon_signed_rank};
use hopbench_core::local::minimize;
use hopbench_core::{ClusterKind, EvalBudget, Evaluator, LocalMinConfig, OptimizerConfig};

fn suite_evaluation(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite_eval");
    for fn_id in [1u32, 10, 15, 21, 24] {
        let p = suite_problem(fn_id, 40);
        let pts = sample_points(&p, 64, 7);
        g.bench_with_input(BenchmarkId::from_parameter(format!("f{fn_id}_D40")), &pts, |b, pts| {
            b.iter(|| pts.iter().map(|x| p.value(black_box(x))).sum::<f64>())
        });
    }
    g.finish();
}

fn cluster_energy(c: &mut Criterion) {
    let mut g = c.benchmark_group("cluster_energy");
    for kind in [ClusterKind::LennardJones, ClusterKind::Morse] {
        for atoms in [20usize, 40] {
            let p = cluster_problem(kind, atoms);
            let pts = sample_points(&p, 16, 3);
            g.bench_with_input(BenchmarkId::new(kind.prefix(), atoms), &pts, |b, pts| {
                b.iter(|| pts.iter().map(|x| p.value(black_box(x))).sum::<f64>())
            });
        }
    }
    g.finish();
}

fn local_search(c: &mut Criterion) {
    let p = suite_problem(10, 20);
    let x0 = sample_points(&p, 1, 11).remove(0);
    let cfg = LocalMinConfig::default();
    c.bench_function("lbfgsb_f10_D20", |b| {
        b.iter(|| {
            let mut ev = Evaluator::new(&p, EvalBudget::new(20_000, 0.0));
            minimize(&mut ev, black_box(&x0), &cfg).f_min
        })
    });
    let simplex = LocalMinConfig::simplex();
    c.bench_function("simplex_f10_D20", |b| {
        b.iter(|| {
            let mut ev = Evaluator::new(&p, EvalBudget::new(20_000, 0.0));
            minimize(&mut ev, black_box(&x0), &simplex).f_min
        })
    });
}

fn optimizer_runs(c: &mut Criterion) {
    let mut g = c.benchmark_group("run_5000_evals_D10");
    g.sample_size(20);
    let p = suite_problem(15, 10);
    for name in ["bh", "bhpop", "pbh", "de", "pso", "cmaes", "random_search"] {
        let cfg: OptimizerConfig = name.parse().expect("known algorithm");
        g.bench_function(name, |b| {
            b.iter(|| cfg.run(&p, EvalBudget::new(5_000, 0.0), 1).expect("runs").best_seen)
        });
    }
    g.finish();
}

fn rank_tests(c: &mut Criterion) {
    let a = samples(15, 0.0, 1);
    let b = samples(15, 0.4, 2);
    c.bench_function("mann_whitney_15x15", |bn| {
        bn.iter(|| mann_whitney_u(black_box(&a), black_box(&b)).unwrap().p_value)
    });
    let diffs: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    c.bench_function("wilcoxon_15", |bn| {
        bn.iter(|| wilcoxon_signed_rank(black_box(&diffs)).unwrap().p_value)
    });
    let blocks: Vec<Vec<f64>> = (0..96).map(|i| samples(6, 0.0, 100 + i)).collect();
    c.bench_function("friedman_96x6", |bn| {
        bn.iter(|| friedman_conover(black_box(&blocks), 0.05).unwrap().omnibus.p_value)
    });
}

criterion_group!(
    benches,
    suite_evaluation,
    cluster_energy,
    local_search,
    optimizer_runs,
    rank_tests
);
criterion_main!(benches);

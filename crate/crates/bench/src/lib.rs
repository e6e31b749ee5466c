//! Shared fixtures for the criterion benchmarks.

use hopbench_core::{make_cluster_problem, make_instance, ClusterKind, Problem, RngStream};

/// A suite instance with its optimum dropped, so runs never stop early.
pub fn suite_problem(fn_id: u32, dim: usize) -> Problem {
    make_instance(fn_id, dim, 1).expect("valid suite id").without_optimum()
}

pub fn cluster_problem(kind: ClusterKind, atoms: usize) -> Problem {
    make_cluster_problem(kind, atoms).expect("valid cluster size")
}

/// `count` points drawn uniformly from the problem box.
pub fn sample_points(problem: &Problem, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = RngStream::new(seed);
    (0..count).map(|_| problem.bounds().sample(&mut rng)).collect()
}

/// Normal samples with a location shift, for the rank tests.
pub fn samples(n: usize, shift: f64, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed);
    (0..n).map(|_| rng.standard_normal() + shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_the_requested_shape() {
        let p = suite_problem(24, 10);
        assert!(p.known_optimum().is_none());
        let pts = sample_points(&p, 4, 1);
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|x| p.bounds().contains(x)));
        assert_eq!(cluster_problem(ClusterKind::Morse, 13).dim(), 39);
        assert_eq!(samples(7, 0.0, 3).len(), 7);
    }
}

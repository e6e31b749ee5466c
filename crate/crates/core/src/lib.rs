//! Basin hopping, its population variants and reference metaheuristics,
//! together with a black-box benchmarking harness and the fixed-budget /
//! fixed-target analysis used to compare them.
//!
//! Module map:
//! - [`problem`], [`eval`], [`trajectory`], [`rng`]: shared domain types
//! - [`local`]: bounded local minimization
//! - [`optimizers`]: BH, BHPOP, PBH, DE, PSO, CMA-ES and random search
//! - [`problems`]: the synthetic suite and atomic-cluster energies
//! - [`harness`]: experiment matrix execution and run storage
//! - [`analysis`]: metrics, statistical tests and reports

pub mod analysis;
pub mod error;
pub mod eval;
pub mod harness;
pub mod local;
pub mod optimizers;
pub mod problem;
pub mod problems;
pub mod rng;
pub mod trajectory;

pub use error::{Error, Result};
pub use eval::{EvalBudget, EvalResult, EvalSummary, Evaluator, Halt};
pub use harness::{AlgorithmEntry, ExperimentConfig, ProblemSpec, RunRecord};
pub use local::{LocalMethod, LocalMinConfig, LocalMinResult};
pub use optimizers::{OptimizerConfig, RunOutcome, RunStatus};
pub use problem::{clip_to_bounds, Bounds, Problem};
pub use problems::{make_cluster_problem, make_instance, ClusterKind};
pub use rng::RngStream;
pub use trajectory::{Event, Trajectory};

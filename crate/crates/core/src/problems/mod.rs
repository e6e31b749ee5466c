//! Benchmark problems: the scalable synthetic suite, atomic clusters and
//! user-registered problems.

pub mod clusters;
pub mod registry;
pub mod suite;
pub mod transforms;

pub use clusters::{
    default_coord_bound, lj_energy, make_cluster_problem, morse_energy, parse_cluster_name, ClusterKind, ClusterProblem,
};
pub use registry::ProblemRegistry;
pub use suite::{make_instance, FunctionGroup, InstanceTransform, SuiteFunction, SuiteInstance};
pub use transforms::Rotation;

//! Rainbow perfect matchings and Hamilton cycles in randomly perturbed graph
//! systems: sampling, adversarial thinning, the permutation reduction to an
//! auxiliary graph, exact solvers, and concentration diagnostics.

pub mod adversary;
pub mod analysis;
pub mod config;
pub mod experiment;
pub mod family;
pub mod graph;
pub mod io;
pub mod parallel;
pub mod record;
pub mod reduction;
pub mod sampling;
pub mod solvers;

pub use config::{ConfigError, ExperimentConfig, ExperimentKind};
pub use experiment::run_experiment;
pub use family::{BipartiteFamily, ColorFamily, GraphFamily, HyperFamily};
pub use graph::{BalancedPartition, BipartiteGraph, Digraph, Graph, GraphError, KPartiteHypergraph, Permutation};
pub use parallel::Execution;
pub use record::ExperimentOutput;
pub use sampling::RandomSeed;

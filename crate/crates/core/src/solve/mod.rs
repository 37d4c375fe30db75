//! Solution graphs, validity conditions, objectives and the optimizer.

pub mod consistency;
pub mod graph;
pub mod lexicographic;
pub mod objective;
pub mod search;
pub mod sketch;

pub use consistency::{cargo_consistent, nodups_consistent, npm_consistent, Consistency};
pub use graph::{check_graph, NodeId, PackageVersion, SolutionGraph, Violation};
pub use lexicographic::lexicographic_minimize;
pub use objective::{
    cost_cve, cost_duplicates, cost_num_deps, cost_oldness, evaluate, mean_oldness, oldness, Cost, Objective,
    SolverSpec, DEFAULT_TIMEOUT,
};
pub use search::{solve, Solution, SolveOutcome, UnsatCause, UnsatReport};
pub use sketch::{build_sketch, Sketch};

impl SolverSpec {
    /// [`check_graph`] under this spec's consistency rule and cyclicity flag.
    pub fn check(
        &self,
        registry: &crate::registry::Registry,
        root: &crate::registry::RootManifest,
        g: &SolutionGraph,
    ) -> Vec<Violation> {
        check_graph(registry, root, self.consistency(), self.cycles_allowed(), g)
    }
}

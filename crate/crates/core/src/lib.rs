//! Optimal dependency solving.
//!
//! Given a registry snapshot and a root manifest, [`solve`] returns a solution
//! graph that satisfies every dependency constraint and the chosen
//! consistency rule, and is lexicographically minimal for a prioritized list
//! of objectives (oldness, dependency count, duplicates, aggregate CVSS).
//! [`oracle`] holds an exhaustive solver used to certify results on small
//! inputs.

pub mod audit;
pub mod constraint;
pub mod error;
pub mod lockfile;
pub mod oracle;
pub mod rational;
pub mod registry;
pub mod solve;
pub mod version;

#[cfg(feature = "testkit")]
pub mod testkit;

pub use constraint::{parse_constraint, sat, Constraint};
pub use error::{LoadError, ParseError, SpecError, UnknownPackage};
pub use registry::{load_advisories, load_manifest, load_registry, Advisory, Dependency, Registry, RootManifest};
pub use solve::{
    check_graph, solve, Consistency, Cost, NodeId, Objective, PackageVersion, SolutionGraph, SolveOutcome, SolverSpec,
    Violation,
};
pub use version::{compare_versions, parse_version, Version};

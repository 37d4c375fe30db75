//! Minimization objectives, cost vectors and the solver configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::constraint::sat;
use crate::error::SpecError;
use crate::registry::{Advisory, Registry};
use crate::solve::consistency::Consistency;
use crate::solve::graph::{PackageVersion, SolutionGraph};
use crate::version::Version;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Objective {
    MinOldness,
    MinNumDeps,
    MinDuplicates,
    MinCve,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::MinOldness,
        Objective::MinNumDeps,
        Objective::MinDuplicates,
        Objective::MinCve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Objective::MinOldness => "min_oldness",
            Objective::MinNumDeps => "min_num_deps",
            Objective::MinDuplicates => "min_duplicates",
            Objective::MinCve => "min_cve",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Objective::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| SpecError::UnknownObjective(s.to_string()))
    }
}

/// One exact value per objective, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(pub Vec<BigRational>);

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(600);

/// Consistency rule, prioritized objectives, cyclicity and time budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverSpec {
    consistency: Consistency,
    objectives: Vec<Objective>,
    allow_cycles: bool,
    timeout: Duration,
}

impl SolverSpec {
    pub fn new(consistency: Consistency, objectives: Vec<Objective>) -> Result<Self, SpecError> {
        if objectives.is_empty() {
            return Err(SpecError::NoObjectives);
        }
        for (i, o) in objectives.iter().enumerate() {
            if objectives[..i].contains(o) {
                return Err(SpecError::DuplicateObjective(o.name().to_string()));
            }
        }
        Ok(SolverSpec {
            consistency,
            objectives,
            allow_cycles: true,
            timeout: DEFAULT_TIMEOUT,
        })
    }

    pub fn allow_cycles(mut self, allow: bool) -> Self {
        self.allow_cycles = allow;
        self
    }

    pub fn timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn consistency(&self) -> Consistency {
        self.consistency
    }

    pub fn objectives(&self) -> &[Objective] {
        &self.objectives
    }

    pub fn cycles_allowed(&self) -> bool {
        self.allow_cycles
    }

    pub fn time_limit(&self) -> Duration {
        self.timeout
    }
}

/// Number of included non-root nodes.
pub fn cost_num_deps(g: &SolutionGraph) -> BigRational {
    BigRational::from_integer(BigInt::from(g.package_nodes().count()))
}

/// One unit per extra version of a package.
pub fn cost_duplicates(g: &SolutionGraph) -> BigRational {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for pv in g.package_nodes() {
        *counts.entry(&pv.package).or_default() += 1;
    }
    let extra: usize = counts.values().map(|c| c.saturating_sub(1)).sum();
    BigRational::from_integer(BigInt::from(extra))
}

/// Rank of `version` in the newest-first version list of `package`, scaled
/// into `[0, 1]`. Zero for single-version or unknown packages.
pub fn oldness(registry: &Registry, package: &str, version: &Version) -> BigRational {
    let Ok(all) = registry.sorted_versions(package) else {
        return BigRational::zero();
    };
    if all.len() <= 1 {
        return BigRational::zero();
    }
    match all.iter().position(|v| *v == version) {
        Some(rank) => BigRational::new(BigInt::from(rank), BigInt::from(all.len() - 1)),
        None => BigRational::zero(),
    }
}

pub fn cost_oldness(g: &SolutionGraph, registry: &Registry) -> BigRational {
    g.package_nodes()
        .map(|pv| oldness(registry, &pv.package, &pv.version))
        .sum()
}

/// Mean oldness over included packages, as reported to users. Zero for a
/// graph without packages.
pub fn mean_oldness(g: &SolutionGraph, registry: &Registry) -> BigRational {
    let count = g.package_nodes().count();
    if count == 0 {
        return BigRational::zero();
    }
    cost_oldness(g, registry) / BigRational::from_integer(BigInt::from(count))
}

/// Summed CVSS of advisories matching one node.
pub fn node_cvss(pv: &PackageVersion, advisories: &[Advisory]) -> BigRational {
    advisories
        .iter()
        .filter(|a| a.package == pv.package && sat(&a.affected, &pv.version))
        .map(|a| a.cvss.clone())
        .sum()
}

/// Aggregate CVSS over included nodes; each node pays for itself.
pub fn cost_cve(g: &SolutionGraph, advisories: &[Advisory]) -> BigRational {
    g.package_nodes().map(|pv| node_cvss(pv, advisories)).sum()
}

pub fn objective_value(
    objective: Objective,
    g: &SolutionGraph,
    registry: &Registry,
    advisories: &[Advisory],
) -> BigRational {
    match objective {
        Objective::MinOldness => cost_oldness(g, registry),
        Objective::MinNumDeps => cost_num_deps(g),
        Objective::MinDuplicates => cost_duplicates(g),
        Objective::MinCve => cost_cve(g, advisories),
    }
}

/// Cost vector of `g` for the given objectives, in order.
pub fn evaluate(objectives: &[Objective], g: &SolutionGraph, registry: &Registry, advisories: &[Advisory]) -> Cost {
    Cost(
        objectives
            .iter()
            .map(|o| objective_value(*o, g, registry, advisories))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::load_advisories;
    use crate::solve::graph::NodeId;

    fn v(s: &str) -> Version {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn graph(nodes: &[(&str, &str)]) -> SolutionGraph {
        let mut g = SolutionGraph::root_only();
        for (p, ver) in nodes {
            g.add_node(NodeId::package(*p, v(ver)), vec![]);
        }
        g
    }

    fn ms_registry() -> Registry {
        let mut reg = Registry::new();
        for s in ["1.0.0", "2.1.0", "2.1.2"] {
            reg.insert("ms", v(s), vec![]);
        }
        reg.insert("debug", v("4.3.4"), vec![]);
        reg
    }

    #[test]
    fn spec_validation() {
        assert_eq!(SolverSpec::new(Consistency::Npm, vec![]), Err(SpecError::NoObjectives));
        assert!(matches!(
            SolverSpec::new(Consistency::Npm, vec![Objective::MinCve, Objective::MinCve]),
            Err(SpecError::DuplicateObjective(_))
        ));
        let spec = SolverSpec::new(Consistency::Cargo, vec![Objective::MinOldness]).unwrap();
        assert!(spec.cycles_allowed());
        assert_eq!(spec.time_limit(), Duration::from_secs(600));
        assert_eq!("min_num_deps".parse::<Objective>(), Ok(Objective::MinNumDeps));
        assert!("min_size".parse::<Objective>().is_err());
    }

    #[test]
    fn num_deps_excludes_root() {
        assert_eq!(cost_num_deps(&graph(&[("debug", "4.3.4"), ("ms", "2.1.2")])), r(2, 1));
        assert_eq!(cost_num_deps(&SolutionGraph::root_only()), r(0, 1));
        assert_eq!(
            cost_num_deps(&graph(&[("debug", "4.3.4"), ("ms", "2.1.2"), ("ms", "1.0.0")])),
            r(3, 1)
        );
    }

    #[test]
    fn duplicates() {
        assert_eq!(
            cost_duplicates(&graph(&[("ms", "1.0.0"), ("ms", "2.1.2"), ("debug", "4.3.4")])),
            r(1, 1)
        );
        assert_eq!(cost_duplicates(&graph(&[("ms", "1.0.0"), ("debug", "4.3.4")])), r(0, 1));
        assert_eq!(
            cost_duplicates(&graph(&[("ms", "1.0.0"), ("ms", "2.1.0"), ("ms", "2.1.2")])),
            r(2, 1)
        );
    }

    #[test]
    fn mean_oldness_examples() {
        let reg = ms_registry();
        assert_eq!(mean_oldness(&SolutionGraph::root_only(), &reg), r(0, 1));
        assert_eq!(
            mean_oldness(&graph(&[("ms", "2.1.2"), ("debug", "4.3.4")]), &reg),
            r(0, 1)
        );
        assert_eq!(
            mean_oldness(&graph(&[("ms", "2.1.0"), ("debug", "4.3.4")]), &reg),
            r(1, 4)
        );
    }

    #[test]
    fn oldness_ranks() {
        let reg = ms_registry();
        assert_eq!(oldness(&reg, "ms", &v("2.1.0")), r(1, 2));
        assert_eq!(oldness(&reg, "ms", &v("2.1.2")), r(0, 1));
        assert_eq!(oldness(&reg, "ms", &v("1.0.0")), r(1, 1));
        assert_eq!(oldness(&reg, "debug", &v("4.3.4")), r(0, 1));
        assert_eq!(
            cost_oldness(&graph(&[("ms", "2.1.0"), ("ms", "1.0.0"), ("debug", "4.3.4")]), &reg),
            r(3, 2)
        );
    }

    #[test]
    fn cve_counts_each_node() {
        let adv =
            load_advisories(r#"{"advisories": [{"id": "A", "package": "ms", "affected": "<2.1.2", "cvss": 7.5}]}"#)
                .unwrap();
        assert_eq!(cost_cve(&graph(&[("ms", "1.0.0")]), &adv), r(15, 2));
        assert_eq!(cost_cve(&graph(&[("ms", "2.1.2")]), &adv), r(0, 1));
        assert_eq!(cost_cve(&graph(&[("ms", "1.0.0")]), &[]), r(0, 1));
        assert_eq!(cost_cve(&graph(&[("ms", "1.0.0"), ("ms", "2.1.0")]), &adv), r(15, 1));
    }

    #[test]
    fn cost_vectors_compare_lexicographically() {
        let a = Cost(vec![r(0, 1), r(5, 1)]);
        let b = Cost(vec![r(1, 2), r(0, 1)]);
        assert!(a < b);
        assert_eq!(a.to_string(), "(0, 5)");
    }
}

//! Vulnerability reports over solution graphs.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::constraint::sat;
use crate::rational::format_decimal;
use crate::registry::Advisory;
use crate::solve::graph::SolutionGraph;
use crate::version::Version;

/// Does advisory `a` apply to `package@version`?
pub fn affected(a: &Advisory, package: &str, version: &Version) -> bool {
    a.package == package && sat(&a.affected, version)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeReport {
    pub package: String,
    pub version: Version,
    /// Matching advisory ids, sorted.
    pub advisories: Vec<String>,
    pub subtotal: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    /// Only vulnerable nodes, in canonical node order.
    pub nodes: Vec<NodeReport>,
    pub total: BigRational,
}

pub fn audit_report(g: &SolutionGraph, advisories: &[Advisory]) -> AuditReport {
    let mut nodes = Vec::new();
    let mut total = BigRational::zero();
    for pv in g.package_nodes() {
        let matching: Vec<&Advisory> = advisories
            .iter()
            .filter(|a| affected(a, &pv.package, &pv.version))
            .collect();
        if matching.is_empty() {
            continue;
        }
        let subtotal: BigRational = matching.iter().map(|a| a.cvss.clone()).sum();
        total += &subtotal;
        let mut ids: Vec<String> = matching.iter().map(|a| a.id.clone()).collect();
        ids.sort();
        nodes.push(NodeReport {
            package: pv.package.clone(),
            version: pv.version.clone(),
            advisories: ids,
            subtotal,
        });
    }
    AuditReport { nodes, total }
}

impl AuditReport {
    pub fn to_json(&self) -> Value {
        json!({
            "total": format_decimal(&self.total),
            "nodes": self.nodes.iter().map(|n| json!({
                "package": n.package,
                "version": n.version.to_string(),
                "advisories": n.advisories,
                "subtotal": format_decimal(&n.subtotal),
            })).collect::<Vec<_>>(),
        })
    }

    fn advisory_ids(&self) -> BTreeSet<&str> {
        self.nodes
            .iter()
            .flat_map(|n| n.advisories.iter().map(String::as_str))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDelta {
    /// `after.total - before.total`.
    pub total: BigRational,
    /// Advisory ids present only after.
    pub added: BTreeSet<String>,
    /// Advisory ids present only before.
    pub removed: BTreeSet<String>,
}

pub fn compare_reports(before: &AuditReport, after: &AuditReport) -> ReportDelta {
    let (b, a) = (before.advisory_ids(), after.advisory_ids());
    ReportDelta {
        total: &after.total - &before.total,
        added: a.difference(&b).map(|s| s.to_string()).collect(),
        removed: b.difference(&a).map(|s| s.to_string()).collect(),
    }
}

impl ReportDelta {
    pub fn to_json(&self) -> Value {
        json!({
            "total": format_decimal(&self.total),
            "added": self.added,
            "removed": self.removed,
        })
    }
}

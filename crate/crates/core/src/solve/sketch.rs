//! The candidate superstructure a solution graph is selected from.
//!
//! Every version of every reachable package becomes a candidate node. Each
//! dependency slot knows its concrete target name and constraint, and the
//! candidate targets it may resolve to: the versions of that package only.

use std::collections::{BTreeMap, HashMap};

use crate::constraint::{sat, Constraint};
use crate::registry::{Registry, RootManifest};
use crate::solve::graph::NodeId;

/// Index of the root in [`Sketch::nodes`].
pub const ROOT: usize = 0;

#[derive(Debug, Clone)]
pub struct Slot {
    pub package: String,
    pub constraint: Constraint,
    /// Every version of `package`, newest first.
    pub candidates: Vec<usize>,
    /// The candidates that satisfy `constraint`, in the same order.
    pub satisfying: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SketchNode {
    pub id: NodeId,
    /// Dense package index; `None` for the root.
    pub package: Option<usize>,
    pub slots: Vec<Slot>,
}

/// Candidate nodes in canonical order: root, then package name ascending and
/// version descending. Node indices therefore order nodes canonically.
#[derive(Debug, Clone)]
pub struct Sketch {
    pub nodes: Vec<SketchNode>,
    /// Package names by dense index, ascending.
    pub packages: Vec<String>,
    index: HashMap<NodeId, usize>,
}

impl Sketch {
    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn slot_count(&self) -> usize {
        self.nodes.iter().map(|n| n.slots.len()).sum()
    }
}

pub fn build_sketch(registry: &Registry, root: &RootManifest) -> Sketch {
    let reach = registry.reachable_packages(root);
    let mut ids = vec![NodeId::Root];
    let mut package_of = vec![None];
    let mut by_package: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let packages: Vec<String> = reach
        .packages
        .iter()
        .filter(|p| registry.contains_package(p))
        .cloned()
        .collect();
    for (pkg_idx, name) in packages.iter().enumerate() {
        let versions = registry.sorted_versions(name).expect("reachable package exists");
        for v in versions {
            by_package.entry(name).or_default().push(ids.len());
            ids.push(NodeId::package(name.clone(), v.clone()));
            package_of.push(Some(pkg_idx));
        }
    }
    let index: HashMap<NodeId, usize> = ids.iter().cloned().enumerate().map(|(i, id)| (id, i)).collect();

    let nodes = ids
        .iter()
        .zip(package_of)
        .map(|(id, package)| {
            let deps = match id {
                NodeId::Root => &root.dependencies[..],
                NodeId::Package(pv) => registry
                    .dependencies(&pv.package, &pv.version)
                    .expect("sketch node comes from the registry"),
            };
            let slots = deps
                .iter()
                .map(|dep| {
                    let candidates = by_package.get(dep.package.as_str()).cloned().unwrap_or_default();
                    let satisfying = candidates
                        .iter()
                        .copied()
                        .filter(|&c| {
                            let pv = ids[c].as_package().expect("candidates are package nodes");
                            sat(&dep.constraint, &pv.version)
                        })
                        .collect();
                    Slot {
                        package: dep.package.clone(),
                        constraint: dep.constraint.clone(),
                        candidates,
                        satisfying,
                    }
                })
                .collect();
            SketchNode {
                id: id.clone(),
                package,
                slots,
            }
        })
        .collect();
    Sketch { nodes, packages, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::load_registry;

    #[test]
    fn debug_ms_sketch() {
        let r = load_registry(
            r#"{"packages": {
                "debug": {"4.3.4": {"dependencies": [["ms", "^2.1.0"]]}},
                "ms": {"1.0.0": {}, "2.1.0": {}, "2.1.2": {}},
                "other": {"1.0.0": {}}
            }}"#,
        )
        .unwrap();
        let root =
            RootManifest::from_json(r#"{"name": "app", "dependencies": [["debug", "*"], ["ms", "*"]]}"#).unwrap();
        let s = build_sketch(&r, &root);
        let names: Vec<String> = s.nodes.iter().map(|n| n.id.to_string()).collect();
        assert_eq!(names, ["<root>", "debug@4.3.4", "ms@2.1.2", "ms@2.1.0", "ms@1.0.0"]);
        assert_eq!(s.nodes[ROOT].slots[1].candidates, vec![2, 3, 4]);
        assert_eq!(s.nodes[1].slots[0].satisfying, vec![2, 3]);
        assert_eq!(s.packages, ["debug", "ms"]);
    }

    #[test]
    fn empty_root() {
        let r = load_registry(r#"{"packages": {"a": {"1.0.0": {}}}}"#).unwrap();
        let s = build_sketch(&r, &RootManifest::new("app", vec![]));
        assert_eq!(s.len(), 1);
        assert_eq!(s.slot_count(), 0);
    }

    #[test]
    fn missing_target_gives_empty_slot() {
        let r = load_registry(r#"{"packages": {"a": {"1.0.0": {"dependencies": [["ghost", "*"]]}}}}"#).unwrap();
        let root = RootManifest::from_json(r#"{"name": "app", "dependencies": [["a", "*"]]}"#).unwrap();
        let s = build_sketch(&r, &root);
        assert_eq!(s.len(), 2);
        assert!(s.nodes[1].slots[0].candidates.is_empty());
        assert!(s.nodes[1].slots[0].satisfying.is_empty());
    }
}

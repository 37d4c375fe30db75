//! Solution graphs and the six validity conditions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::constraint::{sat, Constraint};
use crate::registry::{Registry, RootManifest};
use crate::solve::consistency::Consistency;
use crate::version::Version;

/// A concrete `(package, version)` node.
///
/// Ordered canonically: package name ascending, then version *descending*.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackageVersion {
    pub package: String,
    pub version: Version,
}

impl PackageVersion {
    pub fn new(package: impl Into<String>, version: Version) -> Self {
        PackageVersion {
            package: package.into(),
            version,
        }
    }
}

impl Ord for PackageVersion {
    fn cmp(&self, other: &Self) -> Ordering {
        self.package
            .cmp(&other.package)
            .then_with(|| other.version.cmp(&self.version))
    }
}

impl PartialOrd for PackageVersion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PackageVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.package, self.version)
    }
}

/// A node of a solution graph. The root sorts before every package node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeId {
    Root,
    Package(PackageVersion),
}

impl NodeId {
    pub fn package(name: impl Into<String>, version: Version) -> Self {
        NodeId::Package(PackageVersion::new(name, version))
    }

    pub fn as_package(&self) -> Option<&PackageVersion> {
        match self {
            NodeId::Root => None,
            NodeId::Package(pv) => Some(pv),
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Root => f.write_str("<root>"),
            NodeId::Package(pv) => pv.fmt(f),
        }
    }
}

/// Included nodes plus, per node, one resolved target per declared dependency.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionGraph {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeMap<NodeId, Vec<NodeId>>,
}

impl SolutionGraph {
    pub fn new() -> Self {
        SolutionGraph::default()
    }

    /// A graph holding only the root, with no edges.
    pub fn root_only() -> Self {
        let mut g = SolutionGraph::new();
        g.nodes.insert(NodeId::Root);
        g.edges.insert(NodeId::Root, Vec::new());
        g
    }

    pub fn add_node(&mut self, node: NodeId, targets: Vec<NodeId>) {
        self.edges.insert(node.clone(), targets);
        self.nodes.insert(node);
    }

    pub fn package_nodes(&self) -> impl Iterator<Item = &PackageVersion> {
        self.nodes.iter().filter_map(NodeId::as_package)
    }

    pub fn targets(&self, node: &NodeId) -> &[NodeId] {
        self.edges.get(node).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Canonical ordering used to break ties between equal-cost graphs:
    /// the sorted node sequence first, then the edge vectors.
    pub fn tie_order(&self, other: &Self) -> Ordering {
        self.nodes
            .iter()
            .cmp(other.nodes.iter())
            .then_with(|| self.edges.iter().cmp(other.edges.iter()))
    }

    /// A topological order (dependents before dependencies) if the edge
    /// relation among included nodes is acyclic.
    pub fn topological_order(&self) -> Option<Vec<&NodeId>> {
        let mut indegree: HashMap<&NodeId, usize> = self.nodes.iter().map(|n| (n, 0)).collect();
        for (from, targets) in &self.edges {
            if !self.nodes.contains(from) {
                continue;
            }
            for t in targets {
                if let Some(d) = indegree.get_mut(t) {
                    *d += 1;
                }
            }
        }
        let mut ready: Vec<&NodeId> = indegree.iter().filter(|(_, d)| **d == 0).map(|(n, _)| *n).collect();
        ready.sort();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(n) = ready.pop() {
            order.push(n);
            for t in self.targets(n) {
                if let Some(d) = indegree.get_mut(t) {
                    *d -= 1;
                    if *d == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

/// A broken validity condition. [`Violation::condition`] gives its number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingRoot,
    Unreachable(NodeId),
    UnknownNode(NodeId),
    /// Edges recorded for a node that is not part of the graph.
    StrayEdges(NodeId),
    ArityMismatch {
        node: NodeId,
        expected: usize,
        found: usize,
    },
    DanglingEdge {
        from: NodeId,
        slot: usize,
        target: NodeId,
    },
    WrongPackage {
        from: NodeId,
        slot: usize,
        expected: String,
        target: NodeId,
    },
    Unsatisfied {
        from: NodeId,
        slot: usize,
        constraint: Constraint,
        target: NodeId,
    },
    Inconsistent {
        package: String,
        first: Version,
        second: Version,
    },
    Cycle(Vec<NodeId>),
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::MissingRoot => 1,
            Violation::Unreachable(_) => 2,
            Violation::UnknownNode(_)
            | Violation::StrayEdges(_)
            | Violation::ArityMismatch { .. }
            | Violation::DanglingEdge { .. } => 3,
            Violation::WrongPackage { .. } | Violation::Unsatisfied { .. } => 4,
            Violation::Inconsistent { .. } => 5,
            Violation::Cycle(_) => 6,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: ", self.condition())?;
        match self {
            Violation::MissingRoot => f.write_str("the root is not included"),
            Violation::Unreachable(n) => write!(f, "{n} is not reachable from the root"),
            Violation::UnknownNode(n) => write!(f, "{n} is not in the registry"),
            Violation::StrayEdges(n) => write!(f, "edges recorded for {n}, which is not included"),
            Violation::ArityMismatch { node, expected, found } => {
                write!(f, "{node} declares {expected} dependencies but has {found} edges")
            }
            Violation::DanglingEdge { from, slot, target } => {
                write!(f, "edge {slot} of {from} points to {target}, which is not included")
            }
            Violation::WrongPackage {
                from,
                slot,
                expected,
                target,
            } => {
                write!(
                    f,
                    "edge {slot} of {from} must point to `{expected}` but points to {target}"
                )
            }
            Violation::Unsatisfied {
                from,
                slot,
                constraint,
                target,
            } => {
                write!(
                    f,
                    "edge {slot} of {from} points to {target}, which does not satisfy `{constraint}`"
                )
            }
            Violation::Inconsistent { package, first, second } => {
                write!(
                    f,
                    "versions {first} and {second} of `{package}` cannot be installed together"
                )
            }
            Violation::Cycle(nodes) => {
                f.write_str("dependency cycle through ")?;
                for (i, n) in nodes.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{n}")?;
                }
                Ok(())
            }
        }
    }
}

/// Checks every validity condition and returns all violations found; an
/// empty list means the graph is valid.
pub fn check_graph(
    registry: &Registry,
    root: &RootManifest,
    consistency: Consistency,
    allow_cycles: bool,
    g: &SolutionGraph,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if !g.nodes.contains(&NodeId::Root) {
        out.push(Violation::MissingRoot);
    }

    // Connectivity: reachable from the root along directed edges.
    let mut seen: BTreeSet<&NodeId> = BTreeSet::new();
    if g.nodes.contains(&NodeId::Root) {
        let mut stack = vec![&NodeId::Root];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            stack.extend(g.targets(n).iter().filter(|t| g.nodes.contains(*t)));
        }
    }
    out.extend(
        g.nodes
            .iter()
            .filter(|n| !seen.contains(n))
            .map(|n| Violation::Unreachable(n.clone())),
    );

    out.extend(
        g.edges
            .keys()
            .filter(|n| !g.nodes.contains(*n))
            .map(|n| Violation::StrayEdges(n.clone())),
    );

    for node in &g.nodes {
        let declared = match node {
            NodeId::Root => &root.dependencies[..],
            NodeId::Package(pv) => match registry.dependencies(&pv.package, &pv.version) {
                Some(deps) => deps,
                None => {
                    out.push(Violation::UnknownNode(node.clone()));
                    continue;
                }
            },
        };
        let targets = g.targets(node);
        if targets.len() != declared.len() {
            out.push(Violation::ArityMismatch {
                node: node.clone(),
                expected: declared.len(),
                found: targets.len(),
            });
        }
        for (slot, (dep, target)) in declared.iter().zip(targets).enumerate() {
            if !g.nodes.contains(target) {
                out.push(Violation::DanglingEdge {
                    from: node.clone(),
                    slot,
                    target: target.clone(),
                });
                continue;
            }
            match target {
                NodeId::Package(pv) if pv.package == dep.package => {
                    if !sat(&dep.constraint, &pv.version) {
                        out.push(Violation::Unsatisfied {
                            from: node.clone(),
                            slot,
                            constraint: dep.constraint.clone(),
                            target: target.clone(),
                        });
                    }
                }
                _ => out.push(Violation::WrongPackage {
                    from: node.clone(),
                    slot,
                    expected: dep.package.clone(),
                    target: target.clone(),
                }),
            }
        }
    }

    let mut by_package: BTreeMap<&str, Vec<&Version>> = BTreeMap::new();
    for pv in g.package_nodes() {
        by_package.entry(&pv.package).or_default().push(&pv.version);
    }
    for (package, versions) in by_package {
        for (i, a) in versions.iter().enumerate() {
            for b in &versions[i + 1..] {
                if !consistency.consistent(a, b) {
                    out.push(Violation::Inconsistent {
                        package: package.to_string(),
                        first: (*a).clone(),
                        second: (*b).clone(),
                    });
                }
            }
        }
    }

    if !allow_cycles {
        out.extend(cycles(g).into_iter().map(Violation::Cycle));
    }
    out
}

/// Strongly connected components that contain a cycle.
fn cycles(g: &SolutionGraph) -> Vec<Vec<NodeId>> {
    let nodes: Vec<&NodeId> = g.nodes.iter().collect();
    let index: HashMap<&NodeId, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let succ: Vec<Vec<usize>> = nodes
        .iter()
        .map(|n| g.targets(n).iter().filter_map(|t| index.get(t).copied()).collect())
        .collect();

    struct Tarjan<'s> {
        succ: &'s [Vec<usize>],
        counter: usize,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        components: Vec<Vec<usize>>,
    }

    impl Tarjan<'_> {
        fn visit(&mut self, v: usize) {
            self.index[v] = Some(self.counter);
            self.low[v] = self.counter;
            self.counter += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for &w in &self.succ[v] {
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                    Some(_) => {}
                }
            }
            if Some(self.low[v]) == self.index[v] {
                let mut component = Vec::new();
                loop {
                    let w = self.stack.pop().expect("tarjan stack");
                    self.on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                self.components.push(component);
            }
        }
    }

    let n = nodes.len();
    let mut t = Tarjan {
        succ: &succ,
        counter: 0,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        components: Vec::new(),
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    let mut out: Vec<Vec<NodeId>> = t
        .components
        .into_iter()
        .filter(|c| c.len() > 1 || succ[c[0]].contains(&c[0]))
        .map(|mut c| {
            c.sort_unstable();
            c.into_iter().map(|i| nodes[i].clone()).collect()
        })
        .collect();
    out.sort();
    out
}

//! Exact lexicographic optimization over a sketch by branch and bound.
//!
//! Graphs are grown from the root: pending dependency slots are resolved in
//! FIFO order, each either to a node that is already included or to a new
//! node, whose own slots are then queued. Every connected graph is produced
//! along exactly one branch, so exhausting the tree is complete.
//!
//! All objectives are sums of non-negative per-node terms (duplicates pay one
//! unit per extra version of a package), so the running cost never decreases
//! along a branch. The bound adds, per objective, the largest cheapest way to
//! close any single pending slot; a branch is cut when that bound is
//! lexicographically above the incumbent. Equal-cost completions are kept
//! when their node sequence sorts first, and the edges of the final node set
//! are chosen in a second pass as the canonically smallest valid assignment.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::ops::{AddAssign, SubAssign};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::registry::{Advisory, Registry, RootManifest};
use crate::solve::consistency::Consistency;
use crate::solve::graph::SolutionGraph;
use crate::solve::objective::{node_cvss, oldness, Cost, Objective, SolverSpec};
use crate::solve::sketch::{build_sketch, Sketch, ROOT};
use crate::version::Version;

/// Admissible targets of a requirement and their cheapest cost.
type Requirement<T> = (Vec<usize>, Vec<T>);

/// An optimal (or, after a timeout, best known) graph and its cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub graph: SolutionGraph,
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnsatCause {
    /// Every otherwise valid graph co-installs versions the consistency rule
    /// forbids. Lists the packages involved.
    Consistency { packages: Vec<String> },
    /// Solutions exist only with dependency cycles.
    Cycles,
    /// Some root dependencies cannot be closed under the constraints. Lists
    /// `(package, range)` pairs of the blocked root dependencies.
    Dependencies { blocked: Vec<(String, String)> },
    /// The diagnosis itself ran out of time.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsatReport {
    pub cause: UnsatCause,
}

impl UnsatReport {
    /// The validity condition that cannot be met, when known.
    pub fn condition(&self) -> Option<u8> {
        match self.cause {
            UnsatCause::Consistency { .. } => Some(5),
            UnsatCause::Cycles => Some(6),
            UnsatCause::Dependencies { .. } => Some(4),
            UnsatCause::Undetermined => None,
        }
    }
}

impl std::fmt::Display for UnsatReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.cause {
            UnsatCause::Consistency { packages } => write!(
                f,
                "condition 5: every solution needs inconsistent versions of {}",
                quoted(packages.iter().map(String::as_str))
            ),
            UnsatCause::Cycles => f.write_str("condition 6: every solution contains a dependency cycle"),
            UnsatCause::Dependencies { blocked } => write!(
                f,
                "condition 4: no installable version satisfies {}",
                quoted(
                    blocked
                        .iter()
                        .map(|(p, c)| format!("{p} {c}"))
                        .collect::<Vec<_>>()
                        .iter()
                        .map(String::as_str)
                )
            ),
            UnsatCause::Undetermined => f.write_str("no valid solution graph exists"),
        }
    }
}

fn quoted<'a>(items: impl Iterator<Item = &'a str>) -> String {
    items.map(|s| format!("`{s}`")).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Certified lexicographic optimum.
    Optimal(Solution),
    Unsat(UnsatReport),
    /// The deadline passed. Carries the best graph found so far, which is
    /// valid but not certified optimal.
    Timeout(Option<Solution>),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Optimal(s) => Some(s),
            SolveOutcome::Timeout(s) => s.as_ref(),
            SolveOutcome::Unsat(_) => None,
        }
    }
}

/// Finds a valid graph with lexicographically minimal cost.
pub fn solve(registry: &Registry, root: &RootManifest, spec: &SolverSpec, advisories: &[Advisory]) -> SolveOutcome {
    let deadline = Instant::now() + spec.time_limit();
    let sketch = build_sketch(registry, root);
    let costs = NodeCosts::new(&sketch, registry, advisories, spec.objectives());
    let result = costs.search(&sketch, spec.consistency(), spec.cycles_allowed(), deadline);

    let finish = |nodes: Vec<usize>, cost: Vec<BigRational>| -> Solution {
        let edges = canonical_edges(&sketch, &nodes, spec.cycles_allowed())
            .expect("a node set found by the search admits valid edges");
        Solution {
            graph: to_graph(&sketch, &nodes, &edges),
            cost: Cost(cost),
        }
    };
    match (result.best, result.timed_out) {
        (Some((cost, nodes)), false) => SolveOutcome::Optimal(finish(nodes, cost)),
        (best, true) => SolveOutcome::Timeout(best.map(|(cost, nodes)| finish(nodes, cost))),
        (None, false) => SolveOutcome::Unsat(diagnose(&sketch, registry, spec, deadline)),
    }
}

/// Exact integer arithmetic for the search. Per-objective costs are scaled by
/// the lcm of their denominators; `i128` is used when nothing can overflow.
trait CostNum: Clone + Ord + Zero + One + AddAssign + SubAssign {
    fn from_big(value: BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl CostNum for i128 {
    fn from_big(value: BigInt) -> Self {
        value.to_i128().expect("range checked before choosing i128")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl CostNum for BigInt {
    fn from_big(value: BigInt) -> Self {
        value
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Per-node cost terms, indexed `[node][objective]`. Duplicates are charged
/// dynamically and hold zero here.
struct NodeCosts {
    terms: Vec<Vec<BigRational>>,
    duplicates: Option<usize>,
    width: usize,
}

impl NodeCosts {
    fn new(sketch: &Sketch, registry: &Registry, advisories: &[Advisory], objectives: &[Objective]) -> Self {
        let terms = sketch
            .nodes
            .iter()
            .map(|node| match node.id.as_package() {
                None => vec![BigRational::zero(); objectives.len()],
                Some(pv) => objectives
                    .iter()
                    .map(|o| match o {
                        Objective::MinOldness => oldness(registry, &pv.package, &pv.version),
                        Objective::MinNumDeps => BigRational::one(),
                        Objective::MinDuplicates => BigRational::zero(),
                        Objective::MinCve => node_cvss(pv, advisories),
                    })
                    .collect(),
            })
            .collect();
        NodeCosts {
            terms,
            duplicates: objectives.iter().position(|o| *o == Objective::MinDuplicates),
            width: objectives.len(),
        }
    }

    fn search(&self, sketch: &Sketch, consistency: Consistency, allow_cycles: bool, deadline: Instant) -> SearchResult {
        let scales: Vec<BigInt> = (0..self.width)
            .map(|i| {
                self.terms
                    .iter()
                    .fold(BigInt::one(), |acc, row| acc.lcm(row[i].denom()))
            })
            .collect();
        // Largest possible total per objective: every node plus one duplicate
        // unit per node.
        let fits = (0..self.width).all(|i| {
            let total: BigInt = self
                .terms
                .iter()
                .map(|row| (&row[i] * BigRational::from_integer(scales[i].clone())).to_integer())
                .sum::<BigInt>()
                + BigInt::from(self.terms.len()) * &scales[i];
            total.bits() < 100
        });
        if fits {
            Search::<i128>::new(sketch, self, &scales, consistency, allow_cycles, deadline).run(&scales)
        } else {
            Search::<BigInt>::new(sketch, self, &scales, consistency, allow_cycles, deadline).run(&scales)
        }
    }
}

struct SearchResult {
    /// Cost and sorted node indices of the best graph.
    best: Option<(Vec<BigRational>, Vec<usize>)>,
    timed_out: bool,
}

/// Upper limit on requirement sets examined per bound evaluation, relative
/// to the number of packages.
const REQUIREMENT_BUDGET: usize = 8;

struct Search<'a, T> {
    sketch: &'a Sketch,
    consistency: Consistency,
    allow_cycles: bool,
    deadline: Instant,
    /// Scaled static cost terms, `[node][objective]`.
    terms: Vec<Vec<T>>,
    duplicates: Option<usize>,
    /// Package index of every slot's target, `[node][slot]`.
    slot_package: Vec<Vec<Option<usize>>>,

    included: Vec<bool>,
    included_list: Vec<usize>,
    by_package: Vec<Vec<usize>>,
    edges: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
    head: usize,
    cost: Vec<T>,

    best: Option<(Vec<T>, Vec<usize>)>,
    expansions: u64,
    timed_out: bool,
}

impl<'a, T: CostNum> Search<'a, T> {
    fn new(
        sketch: &'a Sketch,
        costs: &NodeCosts,
        scales: &[BigInt],
        consistency: Consistency,
        allow_cycles: bool,
        deadline: Instant,
    ) -> Self {
        let terms = costs
            .terms
            .iter()
            .map(|row| {
                row.iter()
                    .zip(scales)
                    .map(|(t, s)| T::from_big((t * BigRational::from_integer(s.clone())).to_integer()))
                    .collect()
            })
            .collect();
        let package_index: HashMap<&str, usize> = sketch
            .packages
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_str(), i))
            .collect();
        let slot_package = sketch
            .nodes
            .iter()
            .map(|n| {
                n.slots
                    .iter()
                    .map(|s| package_index.get(s.package.as_str()).copied())
                    .collect()
            })
            .collect();
        Search {
            sketch,
            consistency,
            allow_cycles,
            deadline,
            terms,
            duplicates: costs.duplicates,
            slot_package,
            included: vec![false; sketch.len()],
            included_list: Vec::new(),
            by_package: vec![Vec::new(); sketch.packages.len()],
            edges: sketch.nodes.iter().map(|n| vec![None; n.slots.len()]).collect(),
            pending: Vec::new(),
            head: 0,
            cost: vec![T::zero(); costs.width],
            best: None,
            expansions: 0,
            timed_out: false,
        }
    }

    fn run(mut self, scales: &[BigInt]) -> SearchResult {
        self.include(ROOT);
        self.descend();
        let best = self.best.map(|(cost, nodes)| {
            let cost = cost
                .iter()
                .zip(scales)
                .map(|(c, s)| BigRational::new(c.to_big(), s.clone()))
                .collect();
            (cost, nodes)
        });
        SearchResult {
            best,
            timed_out: self.timed_out,
        }
    }

    fn width(&self) -> usize {
        self.cost.len()
    }

    fn version(&self, node: usize) -> &'a Version {
        &self.sketch.nodes[node].id.as_package().expect("package node").version
    }

    fn package(&self, node: usize) -> usize {
        self.sketch.nodes[node].package.expect("package node")
    }

    fn may_add(&self, node: usize) -> bool {
        if self.consistency == Consistency::Npm {
            return true;
        }
        let v = self.version(node);
        self.by_package[self.package(node)]
            .iter()
            .all(|&m| self.consistency.consistent(v, self.version(m)))
    }

    /// Extra cost of adding `node` to the current graph, for objective `i`.
    fn marginal(&self, node: usize, i: usize) -> T {
        if Some(i) == self.duplicates {
            if self.by_package[self.package(node)].is_empty() {
                T::zero()
            } else {
                T::one()
            }
        } else {
            self.terms[node][i].clone()
        }
    }

    /// Pushes the new node's slots onto the queue; returns the previous queue
    /// length for [`Search::exclude`].
    fn include(&mut self, node: usize) -> usize {
        if node != ROOT {
            for i in 0..self.width() {
                let m = self.marginal(node, i);
                self.cost[i] += m;
            }
        }
        self.included[node] = true;
        self.included_list.push(node);
        if let Some(pkg) = self.sketch.nodes[node].package {
            self.by_package[pkg].push(node);
        }
        let mark = self.pending.len();
        self.pending
            .extend((0..self.sketch.nodes[node].slots.len()).map(|s| (node, s)));
        mark
    }

    fn exclude(&mut self, node: usize, mark: usize) {
        self.pending.truncate(mark);
        if let Some(pkg) = self.sketch.nodes[node].package {
            self.by_package[pkg].pop();
        }
        self.included_list.pop();
        self.included[node] = false;
        for i in 0..self.width() {
            let m = self.marginal(node, i);
            self.cost[i] -= m;
        }
    }

    /// Whether `to` is reachable from `from` over resolved edges.
    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.sketch.len()];
        let mut stack = vec![from];
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(self.edges[n].iter().flatten().copied());
        }
        false
    }

    /// Targets a slot could still take: included or addable.
    fn admissible(&self, node: usize, slot: usize) -> impl Iterator<Item = usize> + '_ {
        self.sketch.nodes[node].slots[slot]
            .satisfying
            .iter()
            .copied()
            .filter(|&t| self.included[t] || self.may_add(t))
    }

    /// Lower bound on the cost of any completion, or `None` when some
    /// requirement cannot be met at all.
    ///
    /// A requirement is a set of nodes of one package, at least one of which
    /// must be added. Pending slots with no included target give the first
    /// requirements; when every node of a requirement depends on package Q,
    /// the union of their admissible Q targets is a requirement too. Each
    /// package must then pay at least the cheapest node of each of its
    /// requirements, disjoint requirements need distinct nodes, and distinct
    /// packages pay separately.
    fn bound(&self) -> Option<Vec<T>> {
        let width = self.width();
        let mut per_package: HashMap<usize, Vec<Requirement<T>>> = HashMap::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: Vec<Vec<usize>> = Vec::new();

        for &(n, s) in &self.pending[self.head..] {
            let options: Vec<usize> = self.admissible(n, s).collect();
            if options.is_empty() {
                return None;
            }
            if options.iter().any(|&t| self.included[t]) {
                continue;
            }
            if seen.insert(options.clone()) {
                queue.push(options);
            }
        }

        let budget = REQUIREMENT_BUDGET * self.sketch.packages.len().max(1) + queue.len();
        let mut processed = 0;
        while let Some(options) = queue.pop() {
            processed += 1;
            let pkg = self.package(options[0]);
            let mut cheapest: Vec<T> = (0..width).map(|i| self.marginal(options[0], i)).collect();
            for &t in &options[1..] {
                for (i, c) in cheapest.iter_mut().enumerate() {
                    let m = self.marginal(t, i);
                    if m < *c {
                        *c = m;
                    }
                }
            }
            per_package.entry(pkg).or_default().push((options.clone(), cheapest));
            if processed >= budget {
                continue;
            }

            // Packages every option depends on.
            let first = options[0];
            let mut shared: Vec<usize> = self.slot_package[first].iter().flatten().copied().collect();
            shared.sort_unstable();
            shared.dedup();
            shared.retain(|q| options[1..].iter().all(|&t| self.slot_package[t].contains(&Some(*q))));
            for q in shared {
                let mut union: Vec<usize> = Vec::new();
                for &t in &options {
                    for (s, target) in self.slot_package[t].iter().enumerate() {
                        if *target == Some(q) {
                            union.extend(self.admissible(t, s));
                        }
                    }
                }
                if union.is_empty() {
                    return None;
                }
                if union.iter().any(|&u| self.included[u]) {
                    continue;
                }
                union.sort_unstable();
                union.dedup();
                if seen.insert(union.clone()) {
                    queue.push(union);
                }
            }
        }

        let mut total = self.cost.clone();
        for (pkg, requirements) in per_package {
            for (t, e) in total.iter_mut().zip(self.package_bound(pkg, requirements)?) {
                *t += e;
            }
        }
        Some(total)
    }

    /// Least extra cost for one package given its requirements: the dearest
    /// single requirement, or a greedy family of pairwise disjoint ones, each
    /// of which needs a node of its own.
    fn package_bound(&self, pkg: usize, mut requirements: Vec<Requirement<T>>) -> Option<Vec<T>> {
        requirements.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.len().cmp(&b.0.len())));
        let mut used: HashSet<usize> = HashSet::new();
        let mut family: Vec<&Vec<T>> = Vec::new();
        for (options, cheapest) in &requirements {
            if options.iter().all(|t| !used.contains(t)) {
                used.extend(options.iter().copied());
                family.push(cheapest);
            }
        }
        if family.len() > 1 && self.consistency == Consistency::NoDups {
            return None;
        }
        let mut extra = requirements[0].1.clone();
        for i in 0..self.width() {
            let mut sum = T::zero();
            if Some(i) == self.duplicates {
                for _ in 1..family.len() {
                    sum += T::one();
                }
                if !self.by_package[pkg].is_empty() {
                    sum += T::one();
                }
            } else {
                for c in &family {
                    sum += c[i].clone();
                }
            }
            let single = requirements.iter().map(|r| &r.1[i]).max().expect("non-empty");
            extra[i] = if sum > *single { sum } else { single.clone() };
        }
        Some(extra)
    }

    fn record(&mut self) {
        let mut nodes = self.included_list.clone();
        nodes.sort_unstable();
        let better = match &self.best {
            None => true,
            Some((cost, best_nodes)) => match self.cost.cmp(cost) {
                Ordering::Less => true,
                Ordering::Equal => nodes < *best_nodes,
                Ordering::Greater => false,
            },
        };
        if better {
            self.best = Some((self.cost.clone(), nodes));
        }
    }

    fn descend(&mut self) {
        if self.timed_out {
            return;
        }
        self.expansions += 1;
        if self.expansions.is_multiple_of(64) && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }
        let Some(bound) = self.bound() else {
            return;
        };
        if let Some((best, _)) = &self.best {
            if bound > *best {
                return;
            }
        }
        if self.head == self.pending.len() {
            self.record();
            return;
        }

        let (n, s) = self.pending[self.head];
        self.head += 1;
        let width = self.width();
        let mut options: Vec<(Vec<T>, usize)> = self
            .admissible(n, s)
            .map(|t| {
                let key = if self.included[t] {
                    vec![T::zero(); width]
                } else {
                    (0..width).map(|i| self.marginal(t, i)).collect()
                };
                (key, t)
            })
            .collect();
        options.sort();

        for (_, t) in options {
            if self.included[t] {
                if !self.allow_cycles && self.reaches(t, n) {
                    continue;
                }
                self.edges[n][s] = Some(t);
                self.descend();
            } else {
                self.edges[n][s] = Some(t);
                let mark = self.include(t);
                self.descend();
                self.exclude(t, mark);
            }
            self.edges[n][s] = None;
            if self.timed_out {
                break;
            }
        }
        self.head -= 1;
    }
}

/// The canonically smallest valid edge assignment for a fixed node set:
/// slots in node order, each resolved to the first admissible target.
fn canonical_edges(sketch: &Sketch, nodes: &[usize], allow_cycles: bool) -> Option<Vec<Vec<usize>>> {
    let mut member = vec![false; sketch.len()];
    for &n in nodes {
        member[n] = true;
    }
    let slots: Vec<(usize, usize, Vec<usize>)> = nodes
        .iter()
        .flat_map(|&n| {
            let member = &member;
            sketch.nodes[n].slots.iter().enumerate().map(move |(s, slot)| {
                let options = slot.satisfying.iter().copied().filter(|&t| member[t]).collect();
                (n, s, options)
            })
        })
        .collect();
    let mut edges: Vec<Vec<Option<usize>>> = sketch.nodes.iter().map(|n| vec![None; n.slots.len()]).collect();

    fn reaches(edges: &[Vec<Option<usize>>], from: usize, to: usize) -> bool {
        let mut seen = vec![false; edges.len()];
        let mut stack = vec![from];
        while let Some(n) = stack.pop() {
            if n == to {
                return true;
            }
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(edges[n].iter().flatten().copied());
        }
        false
    }

    fn connected(edges: &[Vec<Option<usize>>], nodes: &[usize]) -> bool {
        let mut seen = vec![false; edges.len()];
        let mut stack = vec![ROOT];
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(edges[n].iter().flatten().copied());
        }
        nodes.iter().all(|&n| seen[n])
    }

    fn assign(
        k: usize,
        slots: &[(usize, usize, Vec<usize>)],
        edges: &mut Vec<Vec<Option<usize>>>,
        nodes: &[usize],
        allow_cycles: bool,
    ) -> bool {
        let Some((n, s, options)) = slots.get(k) else {
            return connected(edges, nodes);
        };
        for &t in options {
            if !allow_cycles && reaches(edges, t, *n) {
                continue;
            }
            edges[*n][*s] = Some(t);
            if assign(k + 1, slots, edges, nodes, allow_cycles) {
                return true;
            }
            edges[*n][*s] = None;
        }
        false
    }

    assign(0, &slots, &mut edges, nodes, allow_cycles).then(|| {
        nodes
            .iter()
            .map(|&n| edges[n].iter().map(|t| t.expect("assigned")).collect())
            .collect()
    })
}

fn to_graph(sketch: &Sketch, nodes: &[usize], edges: &[Vec<usize>]) -> SolutionGraph {
    let mut g = SolutionGraph::new();
    for (&n, targets) in nodes.iter().zip(edges) {
        g.add_node(
            sketch.nodes[n].id.clone(),
            targets.iter().map(|&t| sketch.nodes[t].id.clone()).collect(),
        );
    }
    g
}

/// Works out which family of conditions makes the problem unsatisfiable by
/// re-solving with the consistency rule and then acyclicity relaxed.
fn diagnose(sketch: &Sketch, registry: &Registry, spec: &SolverSpec, deadline: Instant) -> UnsatReport {
    let relaxed_costs = NodeCosts::new(sketch, registry, &[], &[Objective::MinDuplicates]);
    if spec.consistency() != Consistency::Npm {
        let result = relaxed_costs.search(sketch, Consistency::Npm, spec.cycles_allowed(), deadline);
        if let Some((_, nodes)) = result.best {
            let mut packages: Vec<String> = Vec::new();
            for (i, &a) in nodes.iter().enumerate() {
                for &b in &nodes[i + 1..] {
                    let (Some(pa), Some(pb)) = (sketch.nodes[a].id.as_package(), sketch.nodes[b].id.as_package())
                    else {
                        continue;
                    };
                    if pa.package == pb.package
                        && !spec.consistency().consistent(&pa.version, &pb.version)
                        && !packages.contains(&pa.package)
                    {
                        packages.push(pa.package.clone());
                    }
                }
            }
            return UnsatReport {
                cause: UnsatCause::Consistency { packages },
            };
        }
        if result.timed_out {
            return UnsatReport {
                cause: UnsatCause::Undetermined,
            };
        }
    }
    if !spec.cycles_allowed() {
        let result = relaxed_costs.search(sketch, Consistency::Npm, true, deadline);
        if result.best.is_some() {
            return UnsatReport {
                cause: UnsatCause::Cycles,
            };
        }
        if result.timed_out {
            return UnsatReport {
                cause: UnsatCause::Undetermined,
            };
        }
    }
    // With duplicates and cycles allowed, a node is installable iff each of
    // its slots has an installable satisfying candidate (greatest fixpoint).
    let mut viable = vec![true; sketch.len()];
    loop {
        let mut changed = false;
        for (i, node) in sketch.nodes.iter().enumerate() {
            if viable[i] && node.slots.iter().any(|s| !s.satisfying.iter().any(|&t| viable[t])) {
                viable[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let blocked = sketch.nodes[ROOT]
        .slots
        .iter()
        .filter(|s| !s.satisfying.iter().any(|&t| viable[t]))
        .map(|s| (s.package.clone(), s.constraint.to_string()))
        .collect();
    UnsatReport {
        cause: UnsatCause::Dependencies { blocked },
    }
}

//! Brute-force reference solver.
//!
//! Enumerates candidate graphs over the sketch, keeps those [`check_graph`]
//! accepts, and picks the optimum by sequential lexicographic filtering. It is
//! exponential and only meant to certify the optimizer on small inputs.

use num_rational::BigRational;
use thiserror::Error;

use crate::registry::{Advisory, Registry, RootManifest};
use crate::solve::graph::{check_graph, SolutionGraph};
use crate::solve::lexicographic::lexicographic_minimize;
use crate::solve::objective::{objective_value, Cost, Objective, SolverSpec};
use crate::solve::sketch::{build_sketch, Sketch, ROOT};
use crate::solve::Consistency;

pub const DEFAULT_BLOWUP_BOUND: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationMode {
    /// Every included flag for every node (root included) times every value
    /// of every slot variable over the versions of its target package,
    /// whether or not the node is included.
    Exhaustive,
    /// Subsets containing the root; each slot of an included node ranges
    /// over included candidates that satisfy its constraint. Excluded nodes
    /// carry no slot values.
    #[default]
    Pruned,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{assignments} candidate assignments exceed the bound of {bound}")]
pub struct CapacityError {
    pub assignments: u128,
    pub bound: u128,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub mode: EnumerationMode,
    pub bound: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            mode: EnumerationMode::Pruned,
            bound: DEFAULT_BLOWUP_BOUND,
        }
    }
}

/// Number of assignments the enumeration would visit.
pub fn candidate_count(sketch: &Sketch, mode: EnumerationMode) -> u128 {
    match mode {
        EnumerationMode::Exhaustive => {
            let mut total: u128 = 1;
            for node in &sketch.nodes {
                total = total.saturating_mul(2);
                for slot in &node.slots {
                    total = total.saturating_mul(slot.candidates.len().max(1) as u128);
                }
            }
            total
        }
        EnumerationMode::Pruned => {
            let others = sketch.len() - 1;
            if others >= 64 {
                return u128::MAX;
            }
            let mut total: u128 = 0;
            for mask in 0..(1u64 << others) {
                let member = membership(sketch, mask);
                let mut product: u128 = 1;
                for (n, node) in sketch.nodes.iter().enumerate() {
                    if !member[n] {
                        continue;
                    }
                    for slot in &node.slots {
                        let k = slot.satisfying.iter().filter(|&&t| member[t]).count() as u128;
                        product = product.saturating_mul(k);
                    }
                }
                total = total.saturating_add(product);
                if total == u128::MAX {
                    break;
                }
            }
            total
        }
    }
}

fn membership(sketch: &Sketch, mask: u64) -> Vec<bool> {
    let mut member = vec![false; sketch.len()];
    member[ROOT] = true;
    for (i, m) in member.iter_mut().enumerate().skip(1) {
        *m = mask & (1 << (i - 1)) != 0;
    }
    member
}

/// Calls `visit` with every graph `check_graph` accepts. In exhaustive mode a
/// graph is visited once per assignment that produces it.
pub fn visit_valid(
    registry: &Registry,
    root: &RootManifest,
    consistency: Consistency,
    allow_cycles: bool,
    options: OracleOptions,
    mut visit: impl FnMut(SolutionGraph),
) -> Result<(), CapacityError> {
    let sketch = build_sketch(registry, root);
    let assignments = candidate_count(&sketch, options.mode);
    if assignments > options.bound {
        return Err(CapacityError {
            assignments,
            bound: options.bound,
        });
    }
    let mut check = |g: SolutionGraph| {
        if check_graph(registry, root, consistency, allow_cycles, &g).is_empty() {
            visit(g);
        }
    };
    match options.mode {
        EnumerationMode::Exhaustive => enumerate_exhaustive(&sketch, &mut check),
        EnumerationMode::Pruned => enumerate_pruned(&sketch, consistency, &mut check),
    }
    Ok(())
}

fn enumerate_exhaustive(sketch: &Sketch, emit: &mut dyn FnMut(SolutionGraph)) {
    // One odometer digit per included flag and per slot variable.
    let mut radices = Vec::new();
    for node in &sketch.nodes {
        radices.push(2);
        radices.extend(node.slots.iter().map(|s| s.candidates.len().max(1)));
    }
    let mut digits = vec![0usize; radices.len()];
    loop {
        let mut g = SolutionGraph::new();
        let mut pos = 0;
        for node in &sketch.nodes {
            let included = digits[pos] == 1;
            pos += 1;
            let mut targets = Vec::with_capacity(node.slots.len());
            for slot in &node.slots {
                if let Some(&t) = slot.candidates.get(digits[pos]) {
                    targets.push(sketch.nodes[t].id.clone());
                }
                pos += 1;
            }
            if included {
                g.add_node(node.id.clone(), targets);
            }
        }
        emit(g);

        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn enumerate_pruned(sketch: &Sketch, consistency: Consistency, emit: &mut dyn FnMut(SolutionGraph)) {
    let others = sketch.len() - 1;
    'subsets: for mask in 0..(1u64 << others) {
        let member = membership(sketch, mask);
        let included: Vec<usize> = (0..sketch.len()).filter(|&i| member[i]).collect();

        // Pairwise consistency depends only on the node set.
        for (i, &a) in included.iter().enumerate() {
            for &b in &included[i + 1..] {
                if let (Some(pa), Some(pb)) = (sketch.nodes[a].id.as_package(), sketch.nodes[b].id.as_package()) {
                    if pa.package == pb.package && !consistency.consistent(&pa.version, &pb.version) {
                        continue 'subsets;
                    }
                }
            }
        }

        let mut slots: Vec<(usize, Vec<usize>)> = Vec::new();
        for &n in &included {
            for slot in &sketch.nodes[n].slots {
                let options: Vec<usize> = slot.satisfying.iter().copied().filter(|&t| member[t]).collect();
                if options.is_empty() {
                    continue 'subsets;
                }
                slots.push((n, options));
            }
        }

        let mut choice = vec![0usize; slots.len()];
        loop {
            let mut g = SolutionGraph::new();
            let mut k = 0;
            for &n in &included {
                let arity = sketch.nodes[n].slots.len();
                let targets = (k..k + arity)
                    .map(|j| sketch.nodes[slots[j].1[choice[j]]].id.clone())
                    .collect();
                k += arity;
                g.add_node(sketch.nodes[n].id.clone(), targets);
            }
            emit(g);

            let mut i = 0;
            loop {
                if i == choice.len() {
                    continue 'subsets;
                }
                choice[i] += 1;
                if choice[i] < slots[i].1.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

/// Every valid graph with its value for each of the four objectives,
/// de-duplicated and sorted.
pub fn enumerate_valid(
    registry: &Registry,
    root: &RootManifest,
    consistency: Consistency,
    allow_cycles: bool,
    advisories: &[Advisory],
    options: OracleOptions,
) -> Result<Vec<(SolutionGraph, Cost)>, CapacityError> {
    let mut graphs = Vec::new();
    visit_valid(registry, root, consistency, allow_cycles, options, |g| graphs.push(g))?;
    graphs.sort();
    graphs.dedup();
    Ok(graphs
        .into_iter()
        .map(|g| {
            let cost = Cost(
                Objective::ALL
                    .iter()
                    .map(|o| objective_value(*o, &g, registry, advisories))
                    .collect(),
            );
            (g, cost)
        })
        .collect())
}

/// The valid graphs of one problem, scored once and reusable across objective
/// orders.
pub struct ValidSet {
    graphs: Vec<(SolutionGraph, Cost)>,
}

impl ValidSet {
    pub fn new(
        registry: &Registry,
        root: &RootManifest,
        consistency: Consistency,
        allow_cycles: bool,
        advisories: &[Advisory],
        options: OracleOptions,
    ) -> Result<Self, CapacityError> {
        enumerate_valid(registry, root, consistency, allow_cycles, advisories, options)
            .map(|graphs| ValidSet { graphs })
    }

    pub fn graphs(&self) -> &[(SolutionGraph, Cost)] {
        &self.graphs
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Lexicographic optimum for `objectives`, ties broken by the canonical
    /// graph order. `None` when no valid graph exists.
    pub fn best(&self, objectives: &[Objective]) -> Option<(SolutionGraph, Cost)> {
        let column = |o: &Objective| Objective::ALL.iter().position(|a| a == o).expect("known objective");
        let columns: Vec<usize> = objectives.iter().map(column).collect();
        let argmin = lexicographic_minimize(self.graphs.iter().collect(), columns.len(), |(_, cost), i| {
            cost.0[columns[i]].clone()
        });
        argmin.into_iter().min_by(|a, b| a.0.tie_order(&b.0)).map(|(g, cost)| {
            let picked: Vec<BigRational> = columns.iter().map(|&c| cost.0[c].clone()).collect();
            (g.clone(), Cost(picked))
        })
    }
}

/// Reference answer for `solve`: `Ok(None)` means unsatisfiable.
pub fn oracle_solve(
    registry: &Registry,
    root: &RootManifest,
    spec: &SolverSpec,
    advisories: &[Advisory],
    options: OracleOptions,
) -> Result<Option<(SolutionGraph, Cost)>, CapacityError> {
    let set = ValidSet::new(
        registry,
        root,
        spec.consistency(),
        spec.cycles_allowed(),
        advisories,
        options,
    )?;
    Ok(set.best(spec.objectives()))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::registry::load_registry;

    fn fig4() -> (Registry, RootManifest) {
        let r = load_registry(
            r#"{"packages": {
                "debug": {"4.3.4": {"dependencies": [["ms", "^2.1.0"]]}},
                "ms": {"1.0.0": {}, "2.1.0": {}, "2.1.2": {}}
            }}"#,
        )
        .unwrap();
        let root =
            RootManifest::from_json(r#"{"name": "app", "dependencies": [["debug", "*"], ["ms", "*"]]}"#).unwrap();
        (r, root)
    }

    fn set_of(
        mode: EnumerationMode,
        reg: &Registry,
        root: &RootManifest,
        c: Consistency,
        cycles: bool,
    ) -> BTreeSet<SolutionGraph> {
        let mut out = BTreeSet::new();
        let options = OracleOptions {
            mode,
            ..Default::default()
        };
        visit_valid(reg, root, c, cycles, options, |g| {
            out.insert(g);
        })
        .unwrap();
        out
    }

    #[test]
    fn fig4_valid_graphs() {
        let (reg, root) = fig4();
        let all = enumerate_valid(&reg, &root, Consistency::Npm, true, &[], OracleOptions::default()).unwrap();
        let sizes: BTreeSet<usize> = all.iter().map(|(g, _)| g.nodes.len()).collect();
        // root + debug + one shared ms, or root + debug + two different ms.
        assert_eq!(sizes, BTreeSet::from([3, 4]));
        // debug → {2.1.2, 2.1.0}, root → {2.1.2, 2.1.0, 1.0.0}: 2 shared + 4 split.
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn empty_root_has_one_valid_graph() {
        let (reg, _) = fig4();
        let root = RootManifest::new("app", vec![]);
        let all = enumerate_valid(&reg, &root, Consistency::NoDups, false, &[], OracleOptions::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].0, SolutionGraph::root_only());
    }

    #[test]
    fn pruned_and_exhaustive_agree() {
        let (reg, root) = fig4();
        for c in [Consistency::Npm, Consistency::NoDups, Consistency::Cargo] {
            for cycles in [true, false] {
                assert_eq!(
                    set_of(EnumerationMode::Exhaustive, &reg, &root, c, cycles),
                    set_of(EnumerationMode::Pruned, &reg, &root, c, cycles)
                );
            }
        }
    }

    #[test]
    fn capacity_bound_is_enforced() {
        let (reg, root) = fig4();
        let options = OracleOptions {
            mode: EnumerationMode::Exhaustive,
            bound: 10,
        };
        let err = oracle_solve(
            &reg,
            &root,
            &SolverSpec::new(Consistency::Npm, vec![Objective::MinOldness]).unwrap(),
            &[],
            options,
        )
        .unwrap_err();
        // 2^5 flags × 1 × 3 × 3 slot values.
        assert_eq!(err.assignments, 288);
    }
}

use pacopt::oracle::{oracle_solve, OracleOptions, ValidSet};
use pacopt::testkit::{random_instance, Shape};
use pacopt::{check_graph, solve, Consistency, Objective, SolveOutcome, SolverSpec};

fn permutations(items: &[Objective]) -> Vec<Vec<Objective>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

const RULES: [Consistency; 3] = [Consistency::Npm, Consistency::NoDups, Consistency::Cargo];

#[test]
fn solver_matches_oracle_on_random_registries() {
    for seed in 0..500u64 {
        let inst = random_instance(seed, Shape::default());
        let chosen: Vec<Objective> = Objective::ALL
            .iter()
            .copied()
            .enumerate()
            .filter(|(i, _)| *i as u64 != seed % 4)
            .map(|(_, o)| o)
            .collect();
        for rule in RULES {
            for cycles in [false, true] {
                let set = ValidSet::new(
                    &inst.registry,
                    &inst.root,
                    rule,
                    cycles,
                    &inst.advisories,
                    OracleOptions::default(),
                )
                .expect("small instances fit the oracle");
                for order in permutations(&chosen) {
                    let spec = SolverSpec::new(rule, order.clone()).unwrap().allow_cycles(cycles);
                    let expected = set.best(&order);
                    let got = solve(&inst.registry, &inst.root, &spec, &inst.advisories);
                    match (&got, &expected) {
                        (SolveOutcome::Optimal(sol), Some((g, cost))) => {
                            assert_eq!(&sol.cost, cost, "seed {seed} {rule} cycles={cycles} {order:?}");
                            assert_eq!(&sol.graph, g, "seed {seed} {rule} cycles={cycles} {order:?}");
                            assert!(check_graph(&inst.registry, &inst.root, rule, cycles, &sol.graph).is_empty());
                        }
                        (SolveOutcome::Unsat(_), None) => {}
                        _ => panic!(
                            "seed {seed} {rule} cycles={cycles} {order:?}: solver {got:?} vs oracle {expected:?}"
                        ),
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_solve_agrees_with_valid_set() {
    let inst = random_instance(3, Shape::default());
    let spec = SolverSpec::new(Consistency::Npm, vec![Objective::MinOldness]).unwrap();
    let set = ValidSet::new(
        &inst.registry,
        &inst.root,
        Consistency::Npm,
        false,
        &inst.advisories,
        OracleOptions::default(),
    )
    .unwrap();
    let direct = oracle_solve(
        &inst.registry,
        &inst.root,
        &spec,
        &inst.advisories,
        OracleOptions::default(),
    )
    .unwrap();
    assert_eq!(direct, set.best(&[Objective::MinOldness]));
}

#[test]
fn solver_matches_oracle_on_denser_registries() {
    let shape = Shape {
        max_packages: 4,
        max_versions: 4,
        max_deps: 3,
        max_root_deps: 3,
        max_advisories: 4,
    };
    let mut compared = 0;
    for seed in 1000..1300u64 {
        let inst = random_instance(seed, shape);
        for rule in RULES {
            let Ok(set) = ValidSet::new(
                &inst.registry,
                &inst.root,
                rule,
                false,
                &inst.advisories,
                OracleOptions::default(),
            ) else {
                continue;
            };
            for order in permutations(&Objective::ALL) {
                let spec = SolverSpec::new(rule, order.clone()).unwrap().allow_cycles(false);
                let got = solve(&inst.registry, &inst.root, &spec, &inst.advisories);
                let expected = set.best(&order);
                assert_eq!(
                    got.solution().map(|s| (&s.graph, &s.cost)),
                    expected.as_ref().map(|(g, c)| (g, c)),
                    "seed {seed} {rule} {order:?}"
                );
                compared += 1;
            }
        }
    }
    assert!(compared > 1000, "only {compared} comparisons ran");
}

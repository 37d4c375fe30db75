use std::cmp::Ordering;

use pacopt::testkit::{random_instance, random_range_text, Shape};
use pacopt::version::Identifier;
use pacopt::{compare_versions, load_registry, parse_constraint, sat, Constraint, Dependency, Registry, Version};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn identifier() -> impl Strategy<Value = Identifier> {
    prop_oneof![
        (0u64..4).prop_map(Identifier::Numeric),
        prop::sample::select(vec!["alpha", "beta", "rc", "x1"]).prop_map(|s| Identifier::AlphaNumeric(s.to_string())),
    ]
}

fn version() -> impl Strategy<Value = Version> {
    (
        0u64..3,
        0u64..3,
        0u64..3,
        prop::collection::vec(identifier(), 0..3),
        prop::option::of(prop::sample::select(vec!["b1", "sha.5114f85", "001"])),
    )
        .prop_map(|(ma, mi, pa, pre, build)| {
            let mut v = Version::new(ma, mi, pa).with_prerelease(pre);
            v.build = build.map(str::to_string);
            v
        })
}

fn release() -> impl Strategy<Value = Version> {
    (0u64..4, 0u64..4, 0u64..4).prop_map(|(a, b, c)| Version::new(a, b, c))
}

fn range() -> impl Strategy<Value = Constraint> {
    any::<u64>().prop_map(|seed| parse_constraint(&random_range_text(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ordering_is_total_and_consistent(a in version(), b in version(), c in version()) {
        prop_assert_eq!(compare_versions(&a, &b), compare_versions(&b, &a).reverse());
        prop_assert_eq!(compare_versions(&a, &b), a.cmp(&b));
        prop_assert_eq!(compare_versions(&a, &b) == Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn build_metadata_is_ignored(a in version()) {
        let mut plain = a.clone();
        plain.build = None;
        prop_assert_eq!(compare_versions(&a, &plain), Ordering::Equal);
        prop_assert_eq!(sat(&Constraint::Exact(plain.clone()), &a), true);
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Version>().unwrap().build, a.build.clone());
    }

    #[test]
    fn exact_matches_only_itself(a in version(), b in version()) {
        prop_assert!(sat(&Constraint::Exact(a.clone()), &a));
        prop_assert_eq!(sat(&Constraint::Exact(a.clone()), &b), a == b);
    }

    #[test]
    fn connectives_are_structural_on_releases(a in range(), b in range(), v in release()) {
        prop_assert_eq!(sat(&Constraint::and(a.clone(), b.clone()), &v), sat(&a, &v) && sat(&b, &v));
        prop_assert_eq!(sat(&Constraint::or(a.clone(), b.clone()), &v), sat(&a, &v) || sat(&b, &v));
    }

    #[test]
    fn printed_ranges_parse_back(seed in any::<u64>()) {
        let text = random_range_text(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = parse_constraint(&text).unwrap();
        let printed = c.to_string();
        prop_assert_eq!(parse_constraint(&printed).unwrap(), c, "{} printed as {}", text, printed);
    }

    #[test]
    fn sat_survives_printing(c in range(), v in version()) {
        let back = parse_constraint(&c.to_string()).unwrap();
        prop_assert_eq!(sat(&back, &v), sat(&c, &v));
    }

    #[test]
    fn registry_round_trips(seed in any::<u64>()) {
        let inst = random_instance(seed, Shape::default());
        let once = inst.registry.to_json();
        let back = load_registry(&once.to_string()).unwrap();
        prop_assert_eq!(&back, &inst.registry);
        prop_assert_eq!(back.to_json(), once);
    }

    #[test]
    fn reachability_is_monotone(seed in any::<u64>(), extra in 0usize..3) {
        let inst = random_instance(seed, Shape::default());
        let before = inst.registry.reachable_packages(&inst.root);
        let mut bigger: Registry = inst.registry.clone();
        let names: Vec<String> = bigger.package_names().map(str::to_string).chain(["ghost".to_string()]).collect();
        for k in 0..=extra {
            let target = &names[k % names.len()];
            bigger.insert(
                format!("fresh{k}"),
                Version::new(1, 0, 0),
                vec![Dependency::new(target.clone(), Constraint::Any)],
            );
        }
        bigger.insert("ghost", Version::new(0, 1, 0), vec![]);
        let after = bigger.reachable_packages(&inst.root);
        prop_assert!(before.packages.is_subset(&after.packages));
    }
}

//! Seeded instance generators for tests and benchmarks.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constraint::parse_constraint;
use crate::rational::parse_decimal;
use crate::registry::{Advisory, Dependency, Registry, RootManifest};
use crate::version::Version;

#[derive(Debug, Clone)]
pub struct Instance {
    pub registry: Registry,
    pub root: RootManifest,
    pub advisories: Vec<Advisory>,
}

const VERSION_POOL: &[&str] = &[
    "0.0.1",
    "0.0.2",
    "0.1.0",
    "0.1.3",
    "0.2.0",
    "1.0.0",
    "1.0.0-rc.1",
    "1.1.0",
    "1.2.5",
    "2.0.0",
    "2.1.0",
];

const CVSS_POOL: &[&str] = &["2.5", "5", "7.5", "9.8", "4.3"];

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub max_packages: usize,
    pub max_versions: usize,
    pub max_deps: usize,
    pub max_root_deps: usize,
    pub max_advisories: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_packages: 5,
            max_versions: 3,
            max_deps: 2,
            max_root_deps: 3,
            max_advisories: 3,
        }
    }
}

fn package_name(i: usize) -> String {
    format!("p{i}")
}

/// A constraint over `versions`, drawn from most of the range grammar.
fn random_range(rng: &mut ChaCha8Rng, versions: &[Version]) -> String {
    let Some(v) = versions.choose(rng) else {
        return "*".to_string();
    };
    let (ma, mi, pa) = v.triple();
    match rng.gen_range(0..14) {
        0 => v.to_string(),
        1 | 12 => format!("^{v}"),
        2 => format!("~{v}"),
        3 | 13 => format!(">={v}"),
        4 => format!("<={v}"),
        5 => format!("{ma}.x"),
        6 => format!("{ma}.{mi}.x"),
        7 => {
            let w = versions.choose(rng).expect("non-empty");
            let (lo, hi) = if w < v { (w, v) } else { (v, w) };
            format!("{lo} - {hi}")
        }
        8 => "*".to_string(),
        9 => {
            let w = versions.choose(rng).expect("non-empty");
            format!("{v} || {w}")
        }
        10 => format!(">{ma}.{mi}.{pa} <={}.0.0", ma + 1),
        _ => format!("^{ma}.{mi}"),
    }
}

/// A small random instance; same seed, same instance.
pub fn random_instance(seed: u64, shape: Shape) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=shape.max_packages);
    let versions: Vec<Vec<Version>> = (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=shape.max_versions);
            let mut vs: Vec<Version> = VERSION_POOL
                .choose_multiple(&mut rng, k)
                .map(|s| s.parse().expect("pool versions parse"))
                .collect();
            vs.sort();
            vs
        })
        .collect();

    let dependency = |rng: &mut ChaCha8Rng| -> Dependency {
        // Occasionally point at a package the registry does not have.
        let target = rng.gen_range(0..=count);
        let (name, text) = if target == count && rng.gen_bool(0.1) {
            ("ghost".to_string(), "*".to_string())
        } else {
            let t = target.min(count - 1);
            (package_name(t), random_range(rng, &versions[t]))
        };
        Dependency::new(name, parse_constraint(&text).expect("generated ranges parse"))
    };

    let mut registry = Registry::new();
    for (i, vs) in versions.iter().enumerate() {
        for v in vs {
            let n = rng.gen_range(0..=shape.max_deps);
            let deps = (0..n).map(|_| dependency(&mut rng)).collect();
            registry.insert(package_name(i), v.clone(), deps);
        }
    }
    let n = rng.gen_range(1..=shape.max_root_deps);
    let root = RootManifest::new("app", (0..n).map(|_| dependency(&mut rng)).collect());

    let n = rng.gen_range(0..=shape.max_advisories);
    let advisories = (0..n)
        .map(|k| {
            let t = rng.gen_range(0..count);
            let text = random_range(&mut rng, &versions[t]);
            let cvss: BigRational = parse_decimal(CVSS_POOL.choose(&mut rng).expect("non-empty")).expect("decimal");
            Advisory {
                id: format!("ADV-{k}"),
                package: package_name(t),
                affected: parse_constraint(&text).expect("generated ranges parse"),
                cvss,
            }
        })
        .collect();

    Instance {
        registry,
        root,
        advisories,
    }
}

/// A layered registry of `packages` packages with `versions` versions each,
/// split over majors 1 and 2. Version `2.m.0` of package `i` depends on
/// `^2.m.0` of package `i + 1` and `^1.m.0` of package `i + 2`; `1.m.0`
/// depends on `^1.m.0` of package `i + 1`.
pub fn scale_instance(packages: usize, versions: usize) -> Instance {
    let name = |i: usize| format!("pkg{i:03}");
    let per_major = versions.div_ceil(2);
    let mut registry = Registry::new();
    for i in 0..packages {
        for k in 0..versions {
            let major = if k < versions - per_major { 1 } else { 2 };
            let minor = if major == 1 { k } else { k - (versions - per_major) };
            let v = Version::new(major, minor as u64, 0);
            let mut deps = Vec::new();
            let caret = |m: u64| parse_constraint(&format!("^{m}.{minor}.0")).expect("caret parses");
            if i + 1 < packages {
                deps.push(Dependency::new(name(i + 1), caret(major)));
            }
            if major == 2 && i + 2 < packages {
                deps.push(Dependency::new(name(i + 2), caret(1)));
            }
            registry.insert(name(i), v, deps);
        }
    }
    let mut root_deps = vec![Dependency::new(name(0), parse_constraint("^2.0.0").expect("parses"))];
    if packages > 1 {
        root_deps.push(Dependency::new(name(1), parse_constraint("^1.0.0").expect("parses")));
    }
    Instance {
        registry,
        root: RootManifest::new("app", root_deps),
        advisories: Vec::new(),
    }
}

/// A release version with small components, so random ranges hit often.
pub fn random_release(rng: &mut ChaCha8Rng) -> Version {
    Version::new(rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4))
}

fn random_partial(rng: &mut ChaCha8Rng) -> String {
    let v = random_release(rng);
    let wild = ["x", "X", "*"];
    match rng.gen_range(0..8) {
        0 => format!("{}", v.major),
        1 => format!("{}.{}", v.major, v.minor),
        2 => format!("{}.{}.{}", v.major, v.minor, wild.choose(rng).expect("non-empty")),
        3 => format!("{}.{}", v.major, wild.choose(rng).expect("non-empty")),
        4 => format!(
            "{v}-{}",
            ["alpha", "rc.1", "0", "beta.2"].choose(rng).expect("non-empty")
        ),
        _ => v.to_string(),
    }
}

fn random_comparator(rng: &mut ChaCha8Rng) -> String {
    let op = ["", "=", ">", ">=", "<", "<=", "^", "~"]
        .choose(rng)
        .expect("non-empty");
    format!("{op}{}", random_partial(rng))
}

/// Range text over the full grammar: comparators with partial versions,
/// carets, tildes, x-ranges, hyphen ranges, conjunctions and disjunctions.
pub fn random_range_text(rng: &mut ChaCha8Rng) -> String {
    let branches = rng.gen_range(1..=3);
    (0..branches)
        .map(|_| match rng.gen_range(0..6) {
            0 => format!("{} - {}", random_partial(rng), random_partial(rng)),
            1 => "*".to_string(),
            _ => {
                let n = rng.gen_range(1..=3);
                (0..n).map(|_| random_comparator(rng)).collect::<Vec<_>>().join(" ")
            }
        })
        .collect::<Vec<_>>()
        .join(" || ")
}

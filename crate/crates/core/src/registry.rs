//! Package metadata: the registry snapshot, root manifests and advisories,
//! loaded from local JSON documents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::constraint::Constraint;
use crate::error::{LoadError, UnknownPackage};
use crate::rational::{format_decimal, parse_decimal};
use crate::version::Version;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependency {
    pub package: String,
    pub constraint: Constraint,
}

impl Dependency {
    pub fn new(package: impl Into<String>, constraint: Constraint) -> Self {
        Dependency {
            package: package.into(),
            constraint,
        }
    }
}

/// An immutable snapshot of every known `(package, version)` and its ordered
/// dependency list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    packages: BTreeMap<String, BTreeMap<Version, Vec<Dependency>>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Adds a release. Returns `false` (and changes nothing) when the
    /// `(package, version)` pair is already present.
    pub fn insert(&mut self, package: impl Into<String>, version: Version, deps: Vec<Dependency>) -> bool {
        let versions = self.packages.entry(package.into()).or_default();
        if versions.contains_key(&version) {
            return false;
        }
        versions.insert(version, deps);
        true
    }

    pub fn contains_package(&self, package: &str) -> bool {
        self.packages.contains_key(package)
    }

    pub fn package_names(&self) -> impl Iterator<Item = &str> {
        self.packages.keys().map(String::as_str)
    }

    pub fn dependencies(&self, package: &str, version: &Version) -> Option<&[Dependency]> {
        self.packages.get(package)?.get(version).map(Vec::as_slice)
    }

    /// Number of `(package, version)` nodes.
    pub fn node_count(&self) -> usize {
        self.packages.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.packages.is_empty()
    }

    /// Versions of `package`, newest first.
    pub fn sorted_versions(&self, package: &str) -> Result<Vec<&Version>, UnknownPackage> {
        self.packages
            .get(package)
            .map(|versions| versions.keys().rev().collect())
            .ok_or_else(|| UnknownPackage(package.to_string()))
    }

    /// Packages reachable from the root's dependencies through the
    /// dependencies of *any* version of a reachable package.
    pub fn reachable_packages(&self, root: &RootManifest) -> Reachability {
        let mut reach = Reachability::default();
        let mut stack: Vec<&str> = root.dependencies.iter().map(|d| d.package.as_str()).collect();
        while let Some(name) = stack.pop() {
            if !reach.packages.insert(name.to_string()) {
                continue;
            }
            match self.packages.get(name) {
                None => {
                    reach.missing.insert(name.to_string());
                }
                Some(versions) => {
                    for deps in versions.values() {
                        stack.extend(deps.iter().map(|d| d.package.as_str()));
                    }
                }
            }
        }
        reach
    }

    pub fn from_json(document: &str) -> Result<Self, LoadError> {
        load_registry(document)
    }

    pub fn to_json(&self) -> Value {
        let packages: serde_json::Map<String, Value> = self
            .packages
            .iter()
            .map(|(name, versions)| {
                let versions: serde_json::Map<String, Value> = versions
                    .iter()
                    .map(|(v, deps)| (v.to_string(), json!({ "dependencies": deps_to_json(deps) })))
                    .collect();
                (name.clone(), Value::Object(versions))
            })
            .collect();
        json!({ "packages": packages })
    }
}

fn deps_to_json(deps: &[Dependency]) -> Value {
    Value::Array(
        deps.iter()
            .map(|d| json!([d.package, d.constraint.to_string()]))
            .collect(),
    )
}

/// Result of [`Registry::reachable_packages`]. `missing` lists reachable names
/// with no entry in the registry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Reachability {
    pub packages: BTreeSet<String>,
    pub missing: BTreeSet<String>,
}

/// The project being solved. It is never a resolution target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootManifest {
    pub name: String,
    pub dependencies: Vec<Dependency>,
}

impl RootManifest {
    pub fn new(name: impl Into<String>, dependencies: Vec<Dependency>) -> Self {
        RootManifest {
            name: name.into(),
            dependencies,
        }
    }

    pub fn from_json(document: &str) -> Result<Self, LoadError> {
        load_manifest(document)
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "dependencies": deps_to_json(&self.dependencies) })
    }
}

/// A known vulnerability affecting a range of versions of one package.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Advisory {
    pub id: String,
    pub package: String,
    pub affected: Constraint,
    /// CVSS score, exact, within `[0, 10]`.
    pub cvss: BigRational,
}

impl Advisory {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "package": self.package,
            "affected": self.affected.to_string(),
            "cvss": format_decimal(&self.cvss).parse::<f64>().unwrap_or(0.0),
        })
    }
}

// ---------------------------------------------------------------------------
// Raw documents

/// A JSON object read as an ordered list of entries, so duplicate keys can be
/// reported instead of silently overwritten.
#[derive(Debug)]
struct Entries<V>(Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Entries<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for EntriesVisitor<V> {
            type Value = Entries<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = map.next_entry()? {
                    entries.push((k, v));
                }
                Ok(Entries(entries))
            }
        }

        deserializer.deserialize_map(EntriesVisitor(PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegistry {
    packages: Entries<Entries<RawRelease>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelease {
    #[serde(default)]
    dependencies: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    #[serde(default)]
    dependencies: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAdvisories {
    advisories: Vec<RawAdvisory>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAdvisory {
    id: String,
    package: String,
    affected: String,
    cvss: f64,
}

pub(crate) fn from_json_str<'de, T: Deserialize<'de>>(document: &'de str) -> Result<T, LoadError> {
    let mut de = serde_json::Deserializer::from_str(document);
    let value = serde_path_to_error::deserialize(&mut de).map_err(LoadError::from_json)?;
    de.end().map_err(|e| LoadError::Schema {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

pub(crate) fn parse_version_at(path: String, text: &str) -> Result<Version, LoadError> {
    Version::parse(text).map_err(|source| LoadError::Parse { path, source })
}

fn parse_deps(path: &str, raw: Vec<(String, String)>) -> Result<Vec<Dependency>, LoadError> {
    raw.into_iter()
        .enumerate()
        .map(|(i, (package, range))| {
            let constraint = Constraint::parse(&range).map_err(|source| LoadError::Parse {
                path: format!("{path}[{i}]"),
                source,
            })?;
            Ok(Dependency { package, constraint })
        })
        .collect()
}

/// Loads a registry document.
pub fn load_registry(document: &str) -> Result<Registry, LoadError> {
    let raw: RawRegistry = from_json_str(document)?;
    let mut registry = Registry::new();
    for (name, releases) in raw.packages.0 {
        let pkg_path = format!("packages.{name}");
        if registry.packages.contains_key(&name) {
            return Err(LoadError::Duplicate { path: pkg_path });
        }
        if releases.0.is_empty() {
            return Err(LoadError::Schema {
                path: pkg_path,
                message: "a package needs at least one version".into(),
            });
        }
        let mut versions = BTreeMap::new();
        for (text, release) in releases.0 {
            let path = format!("{pkg_path}.{text}");
            let version = parse_version_at(path.clone(), &text)?;
            let deps = parse_deps(&format!("{path}.dependencies"), release.dependencies)?;
            if versions.insert(version, deps).is_some() {
                return Err(LoadError::Duplicate { path });
            }
        }
        registry.packages.insert(name, versions);
    }
    Ok(registry)
}

/// Loads a root manifest document.
pub fn load_manifest(document: &str) -> Result<RootManifest, LoadError> {
    let raw: RawManifest = from_json_str(document)?;
    Ok(RootManifest {
        name: raw.name,
        dependencies: parse_deps("dependencies", raw.dependencies)?,
    })
}

/// Loads an advisory document. Scores must lie in `[0, 10]`.
pub fn load_advisories(document: &str) -> Result<Vec<Advisory>, LoadError> {
    if document.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: RawAdvisories = from_json_str(document)?;
    raw.advisories
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let path = format!("advisories[{i}]");
            let affected = Constraint::parse(&a.affected).map_err(|source| LoadError::Parse {
                path: format!("{path}.affected"),
                source,
            })?;
            let cvss = parse_decimal(&a.cvss.to_string()).ok_or_else(|| LoadError::OutOfRange {
                path: format!("{path}.cvss"),
                message: format!("{} is not a finite decimal", a.cvss),
            })?;
            if cvss.is_negative() || cvss > BigRational::from_integer(10.into()) {
                return Err(LoadError::OutOfRange {
                    path: format!("{path}.cvss"),
                    message: format!("cvss {} outside [0, 10]", a.cvss),
                });
            }
            debug_assert!(cvss >= BigRational::zero());
            Ok(Advisory {
                id: a.id,
                package: a.package,
                affected,
                cvss,
            })
        })
        .collect()
}

pub fn advisories_to_json(advisories: &[Advisory]) -> Value {
    json!({ "advisories": advisories.iter().map(Advisory::to_json).collect::<Vec<_>>() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG4: &str = r#"{
        "packages": {
            "debug": { "4.3.4": { "dependencies": [["ms", "^2.1.0"]] } },
            "ms": { "1.0.0": {}, "2.1.0": { "dependencies": [] }, "2.1.2": {} }
        }
    }"#;

    fn v(s: &str) -> Version {
        s.parse().unwrap()
    }

    #[test]
    fn loads_debug_ms_universe() {
        let r = load_registry(FIG4).unwrap();
        assert_eq!(r.node_count(), 4);
        assert_eq!(
            r.dependencies("debug", &v("4.3.4")).unwrap(),
            &[Dependency::new("ms", "^2.1.0".parse().unwrap())]
        );
    }

    #[test]
    fn empty_registry_is_valid() {
        let r = load_registry(r#"{"packages": {}}"#).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn duplicate_release_is_rejected() {
        let doc = r#"{"packages": {"debug": {"4.3.4": {}, "4.3.4": {}}}}"#;
        assert!(matches!(load_registry(doc), Err(LoadError::Duplicate { .. })));
        let doc = r#"{"packages": {"debug": {"4.3.4": {}, "4.3.4+b1": {}}}}"#;
        let err = load_registry(doc).unwrap_err();
        assert_eq!(err.path(), "packages.debug.4.3.4+b1");
        let doc = r#"{"packages": {"debug": {"4.3.4": {}}, "debug": {"1.0.0": {}}}}"#;
        assert!(matches!(load_registry(doc), Err(LoadError::Duplicate { .. })));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let doc = r#"{"packages": {"ms": {"1.0.0": {"dependencies": [["a"]]}}}}"#;
        let err = load_registry(doc).unwrap_err();
        assert!(matches!(err, LoadError::Schema { .. }));
        assert!(
            err.path().starts_with("packages.ms.1.0.0.dependencies"),
            "{}",
            err.path()
        );

        let doc = r#"{"packages": {"ms": {"1.0": {}}}}"#;
        let err = load_registry(doc).unwrap_err();
        assert!(matches!(err, LoadError::Parse { .. }));
        assert_eq!(err.path(), "packages.ms.1.0");

        let doc = r#"{"packages": {"ms": {"1.0.0": {"dependencies": [["a", ">>1"]]}}}}"#;
        assert_eq!(
            load_registry(doc).unwrap_err().path(),
            "packages.ms.1.0.0.dependencies[0]"
        );

        let doc = r#"{"packages": {"ms": {}}}"#;
        assert!(matches!(load_registry(doc), Err(LoadError::Schema { .. })));
    }

    #[test]
    fn dependency_order_is_preserved() {
        let doc = r#"{"packages": {"a": {"1.0.0": {"dependencies": [["z", "*"], ["b", "*"], ["z", "1.0.0"]]}}}}"#;
        let r = load_registry(doc).unwrap();
        let names: Vec<_> = r
            .dependencies("a", &v("1.0.0"))
            .unwrap()
            .iter()
            .map(|d| d.package.as_str())
            .collect();
        assert_eq!(names, ["z", "b", "z"]);
    }

    #[test]
    fn sorted_versions_newest_first() {
        let r = load_registry(FIG4).unwrap();
        let ms: Vec<String> = r.sorted_versions("ms").unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(ms, ["2.1.2", "2.1.0", "1.0.0"]);
        assert_eq!(r.sorted_versions("debug").unwrap().len(), 1);
        assert_eq!(r.sorted_versions("nope"), Err(UnknownPackage("nope".into())));

        let mut pre = Registry::new();
        for s in ["1.0.0", "2.0.0-rc.1", "2.0.0"] {
            pre.insert("p", v(s), vec![]);
        }
        let order: Vec<String> = pre
            .sorted_versions("p")
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(order, ["2.0.0", "2.0.0-rc.1", "1.0.0"]);
    }

    #[test]
    fn reachability() {
        let r = load_registry(FIG4).unwrap();
        let root = RootManifest::new(
            "app",
            vec![
                Dependency::new("debug", Constraint::Any),
                Dependency::new("ms", Constraint::Any),
            ],
        );
        let reach = r.reachable_packages(&root);
        assert_eq!(reach.packages, BTreeSet::from(["debug".to_string(), "ms".to_string()]));
        assert!(reach.missing.is_empty());
        assert!(r
            .reachable_packages(&RootManifest::new("app", vec![]))
            .packages
            .is_empty());
    }

    #[test]
    fn reachability_follows_every_version() {
        let doc = r#"{"packages": {
            "a": {"1.0.0": {"dependencies": [["b", "*"]]}, "2.0.0": {}},
            "b": {"1.0.0": {}, "2.0.0": {"dependencies": [["c", "*"]]}},
            "c": {"1.0.0": {"dependencies": [["ghost", "*"]]}},
            "unrelated": {"1.0.0": {}}
        }}"#;
        let r = load_registry(doc).unwrap();
        let root = RootManifest::new("app", vec![Dependency::new("a", Constraint::Any)]);
        let reach = r.reachable_packages(&root);
        let names: Vec<_> = reach.packages.iter().map(String::as_str).collect();
        assert_eq!(names, ["a", "b", "c", "ghost"]);
        assert_eq!(reach.missing, BTreeSet::from(["ghost".to_string()]));
    }

    #[test]
    fn advisories() {
        let doc = r#"{"advisories": [{"id": "GHSA-1", "package": "ms", "affected": "<2.1.2", "cvss": 7.5}]}"#;
        let list = load_advisories(doc).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].cvss, BigRational::new(15.into(), 2.into()));
        assert!(load_advisories("").unwrap().is_empty());
        assert!(load_advisories(r#"{"advisories": []}"#).unwrap().is_empty());
        let bad = r#"{"advisories": [{"id": "x", "package": "ms", "affected": "*", "cvss": 11}]}"#;
        assert!(matches!(load_advisories(bad), Err(LoadError::OutOfRange { .. })));
        let bad = r#"{"advisories": [{"id": "x", "package": "ms", "affected": "*", "cvss": -0.1}]}"#;
        assert!(matches!(load_advisories(bad), Err(LoadError::OutOfRange { .. })));
    }

    #[test]
    fn manifest() {
        let m = load_manifest(r#"{"name": "app", "dependencies": [["debug", "^4.0.0"], ["ms", "2.1.2"]]}"#).unwrap();
        assert_eq!(m.name, "app");
        assert_eq!(m.dependencies.len(), 2);
        assert!(load_manifest(r#"{"dependencies": []}"#).is_err());
    }

    #[test]
    fn reserialize_round_trips() {
        let r = load_registry(FIG4).unwrap();
        let again = load_registry(&r.to_json().to_string()).unwrap();
        assert_eq!(r, again);
    }
}

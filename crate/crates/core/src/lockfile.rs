//! Lockfile encoding of solution graphs.
//!
//! ```json
//! { "nodes": [ { "deps": [["ms", "2.1.2"]], "package": "debug", "version": "4.3.4" } ],
//!   "root": { "deps": [["debug", "4.3.4"]] } }
//! ```
//!
//! Keys are sorted, nodes appear in canonical order, edge lists keep
//! declaration order, and the document ends with a newline, so equal graphs
//! always serialize to identical bytes.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::LoadError;
use crate::registry::{from_json_str, parse_version_at};
use crate::solve::graph::{NodeId, SolutionGraph};

fn edge_list(targets: &[NodeId]) -> Value {
    Value::Array(
        targets
            .iter()
            .map(|t| match t {
                NodeId::Root => json!(["<root>", ""]),
                NodeId::Package(pv) => json!([pv.package, pv.version.to_string()]),
            })
            .collect(),
    )
}

pub fn to_value(g: &SolutionGraph) -> Value {
    let nodes: Vec<Value> = g
        .package_nodes()
        .map(|pv| {
            let id = NodeId::Package(pv.clone());
            json!({
                "package": pv.package,
                "version": pv.version.to_string(),
                "deps": edge_list(g.targets(&id)),
            })
        })
        .collect();
    let mut doc = json!({ "nodes": nodes });
    if g.nodes.contains(&NodeId::Root) {
        doc["root"] = json!({ "deps": edge_list(g.targets(&NodeId::Root)) });
    }
    doc
}

pub fn write_lockfile(g: &SolutionGraph) -> String {
    let mut out = serde_json::to_string_pretty(&to_value(g)).expect("lockfile values serialize");
    out.push('\n');
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLock {
    root: Option<RawRoot>,
    nodes: Vec<RawNode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRoot {
    deps: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    package: String,
    version: String,
    deps: Vec<(String, String)>,
}

fn targets(path: &str, deps: Vec<(String, String)>) -> Result<Vec<NodeId>, LoadError> {
    deps.into_iter()
        .enumerate()
        .map(|(i, (name, version))| {
            let v = parse_version_at(format!("{path}[{i}]"), &version)?;
            Ok(NodeId::package(name, v))
        })
        .collect()
}

/// Reads a lockfile. Validity is not checked here; see `check_graph`.
pub fn read_lockfile(document: &str) -> Result<SolutionGraph, LoadError> {
    let raw: RawLock = from_json_str(document)?;
    let mut g = SolutionGraph::new();
    if let Some(root) = raw.root {
        g.add_node(NodeId::Root, targets("root.deps", root.deps)?);
    }
    for (i, node) in raw.nodes.into_iter().enumerate() {
        let path = format!("nodes[{i}]");
        let version = parse_version_at(format!("{path}.version"), &node.version)?;
        let id = NodeId::package(node.package, version);
        if g.nodes.contains(&id) {
            return Err(LoadError::Duplicate { path });
        }
        let deps = targets(&format!("{path}.deps"), node.deps)?;
        g.add_node(id, deps);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> crate::version::Version {
        s.parse().unwrap()
    }

    fn sample() -> SolutionGraph {
        let mut g = SolutionGraph::new();
        let debug = NodeId::package("debug", v("4.3.4"));
        let ms = NodeId::package("ms", v("2.1.2"));
        g.add_node(NodeId::Root, vec![debug.clone(), ms.clone()]);
        g.add_node(debug, vec![ms.clone()]);
        g.add_node(ms, vec![]);
        g
    }

    #[test]
    fn golden_bytes() {
        let expected = r#"{
  "nodes": [
    {
      "deps": [
        [
          "ms",
          "2.1.2"
        ]
      ],
      "package": "debug",
      "version": "4.3.4"
    },
    {
      "deps": [],
      "package": "ms",
      "version": "2.1.2"
    }
  ],
  "root": {
    "deps": [
      [
        "debug",
        "4.3.4"
      ],
      [
        "ms",
        "2.1.2"
      ]
    ]
  }
}
"#;
        assert_eq!(write_lockfile(&sample()), expected);
    }

    #[test]
    fn reads_back() {
        assert_eq!(read_lockfile(&write_lockfile(&sample())).unwrap(), sample());
    }

    #[test]
    fn rejects_duplicates_and_bad_versions() {
        let doc = r#"{"root": {"deps": []}, "nodes": [
            {"package": "a", "version": "1.0.0", "deps": []},
            {"package": "a", "version": "1.0.0", "deps": []}]}"#;
        assert!(matches!(read_lockfile(doc), Err(LoadError::Duplicate { .. })));
        let doc = r#"{"root": {"deps": [["a", "one"]]}, "nodes": []}"#;
        assert_eq!(read_lockfile(doc).unwrap_err().path(), "root.deps[0]");
    }

    #[test]
    fn missing_root_is_representable() {
        let g = read_lockfile(r#"{"nodes": []}"#).unwrap();
        assert!(!g.nodes.contains(&NodeId::Root));
    }
}
